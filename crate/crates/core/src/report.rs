//! Verification suites: every checkable statement becomes a claim record with
//! the expected and the computed value. Mismatches are recorded, never fatal.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::codes::{one_point_dual, punctured_dual, three_point_code, EvaluationCode};
use crate::curve::{CurveParams, PointClass, PointSet, ProjectivePoint};
use crate::geometry::secant::plane_through;
use crate::geometry::{
    classify_defect_cause, curve_section_dimension, plane_section_bound_check,
    secant_classification, Conic, Lemma, SearchBudget, SecantTable, SectionDimension,
    ZeroDimScheme,
};
use crate::gf::Elem;
use crate::weights::{
    certified_min_distance, count_min_weight, designed_distance, line_sections,
    secant_count_formula, three_point_formula,
};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Match,
    Mismatch,
    Partial,
    NotApplicable,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClaimRecord {
    pub id: String,
    pub paper_ref: String,
    pub expected: Value,
    pub computed: Value,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Value>,
    pub runtime_ms: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Environment {
    pub q: u32,
    pub level: Level,
    pub seed: u64,
    pub version: String,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Summary {
    pub matched: usize,
    pub mismatched: usize,
    pub partial: usize,
    pub not_applicable: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub environment: Environment,
    pub claims: Vec<ClaimRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn mismatches(&self) -> usize {
        self.summary.mismatched
    }

    pub fn claim(&self, id: &str) -> Option<&ClaimRecord> {
        self.claims.iter().find(|c| c.id == id)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Smoke,
    Full,
    Heavy,
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteOptions {
    pub seed: u64,
    pub lemma_samples: usize,
    pub conic_samples: usize,
    pub random_subsets: usize,
    pub budget: SearchBudget,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 0,
            lemma_samples: 100,
            conic_samples: 200,
            random_subsets: 100_000,
            budget: SearchBudget::default(),
        }
    }
}

/// Per-point tangent multiplicities against the stated dichotomy
/// (q²-q+1 at P∞ and at z = 0 points, q+1 elsewhere).
#[derive(Debug, Clone, Serialize)]
pub struct TangentEntry {
    pub point: usize,
    pub class: PointClass,
    pub multiplicity: u32,
    pub equation_orders: (Option<u32>, Option<u32>),
    pub stated: u32,
    pub agrees: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TangentReport {
    pub q: u32,
    /// `"class:multiplicity" -> count`
    pub histogram: BTreeMap<String, u64>,
    pub disagreements: usize,
    pub entries: Vec<TangentEntry>,
}

pub fn tangent_report(pts: &PointSet) -> TangentReport {
    let params = pts.params();
    let n = params.secant_order();
    let entries: Vec<TangentEntry> = (0..pts.len())
        .into_par_iter()
        .map(|i| {
            let p = pts.point(i);
            let l = params.tangent_line(&p);
            let multiplicity = params
                .line_curve_multiplicity(&l, &p)
                .expect("tangent passes through its point");
            let equation_orders = params
                .line_equation_orders(&l, &p)
                .expect("tangent passes through its point");
            let stated = match p.class() {
                PointClass::Generic => params.q() + 1,
                _ => n,
            };
            TangentEntry {
                point: i,
                class: p.class(),
                multiplicity,
                equation_orders,
                stated,
                agrees: multiplicity == stated,
            }
        })
        .collect();
    let mut histogram = BTreeMap::new();
    for e in &entries {
        *histogram
            .entry(format!("{:?}:{}", e.class, e.multiplicity).to_lowercase())
            .or_insert(0) += 1;
    }
    let disagreements = entries.iter().filter(|e| !e.agrees).count();
    TangentReport {
        q: params.q(),
        histogram,
        disagreements,
        entries,
    }
}

/// Section dimensions for `t = 0..=2q²`.
pub fn section_report(pts: &PointSet) -> Vec<SectionDimension> {
    let params = pts.params();
    let b = params.b();
    (0..=2 * b)
        .into_par_iter()
        .map(|t| curve_section_dimension(params, pts, t))
        .collect()
}

/// A scheme that broke the equivalence, kept for inspection.
#[derive(Debug, Clone, Serialize)]
pub struct SchemeDump {
    pub points: Vec<[u64; 4]>,
    pub multiplicities: Vec<u32>,
    pub m: u32,
    pub e: u32,
    pub h1: usize,
    pub witness: Option<char>,
    pub construction: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaSampling {
    pub q: u32,
    pub attempts: usize,
    pub in_hypothesis: usize,
    pub reduced: usize,
    pub reduced_agree: usize,
    pub curvilinear: usize,
    pub curvilinear_agree: usize,
    pub positive_h1: usize,
    /// Witness case letter -> count
    pub cases: BTreeMap<char, usize>,
    pub constructions: BTreeMap<&'static str, usize>,
    pub disagreements: Vec<SchemeDump>,
}

struct Sampler<'a> {
    pts: &'a PointSet,
    lines: Vec<&'a [usize]>,
    table: &'a SecantTable,
    subfield: Vec<usize>,
    affine: usize,
}

impl<'a> Sampler<'a> {
    fn fill(&self, rng: &mut ChaCha8Rng, chosen: &mut Vec<(usize, u32)>, target: u32) {
        let mut deg: u32 = chosen.iter().map(|c| c.1).sum();
        let mut guard = 0;
        while deg < target && guard < 1000 {
            guard += 1;
            let i = rng.gen_range(0..self.affine);
            if chosen.iter().all(|c| c.0 != i) {
                chosen.push((i, 1));
                deg += 1;
            }
        }
    }

    fn take_from(
        &self,
        rng: &mut ChaCha8Rng,
        chosen: &mut Vec<(usize, u32)>,
        line: &[usize],
        k: usize,
    ) {
        let mut l: Vec<usize> = line.iter().copied().filter(|&i| i < self.affine).collect();
        l.shuffle(rng);
        for i in l.into_iter().take(k) {
            if chosen.iter().all(|c| c.0 != i) {
                chosen.push((i, 1));
            }
        }
    }

    fn conic_points(&self, rng: &mut ChaCha8Rng) -> Option<Vec<usize>> {
        let params = self.pts.params();
        let f = &**params.field();
        let tri: Vec<usize> = (0..3).map(|_| rng.gen_range(0..self.affine)).collect();
        let plane = plane_through(
            f,
            &tri.iter().map(|&i| self.pts.coords(i)).collect::<Vec<_>>(),
        )?;
        let section: Vec<usize> = (0..self.affine)
            .filter(|&i| f.dot(&plane, &self.pts.coords(i)).is_zero())
            .collect();
        if section.len() < 5 {
            return None;
        }
        let mut pick = section.clone();
        pick.shuffle(rng);
        pick.truncate(5);
        let w = ZeroDimScheme::reduced(pick.iter().map(|&i| self.pts.point(i)).collect()).ok()?;
        let c: Conic = Conic::unique_through(f, plane, &w)?;
        Some(
            section
                .into_iter()
                .filter(|&i| c.contains(f, &self.pts.coords(i)))
                .collect(),
        )
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Option<(ZeroDimScheme, u32, u32, &'static str)> {
        let params = self.pts.params();
        let q = params.q();
        let m = if q == 2 {
            rng.gen_range(1..=2)
        } else {
            rng.gen_range(2..=5)
        };
        let e = rng.gen_range(1..=3);
        let mut target = rng.gen_range(m + 1..=3 * m);
        // structured parts land near the witness thresholds
        let near = |rng: &mut ChaCha8Rng, thr: u32| {
            (thr + rng.gen_range(0..=2)).saturating_sub(1) as usize
        };
        let mut chosen: Vec<(usize, u32)> = Vec::new();
        let kind = match rng.gen_range(0..5) {
            0 => {
                let l: &[usize] = if rng.gen_bool(0.5) {
                    &self.table.secants()[rng.gen_range(0..self.table.len())].points
                } else {
                    self.lines[rng.gen_range(0..self.lines.len())]
                };
                let k = near(rng, m + 1 + e).clamp(2, l.len());
                self.take_from(rng, &mut chosen, l, k);
                "line"
            }
            1 => {
                let s = self.table.secants();
                let a = rng.gen_range(0..s.len());
                let b = (a + rng.gen_range(1..s.len())) % s.len();
                let (ka, kb) = (near(rng, m + 1).max(1), near(rng, m).max(1));
                self.take_from(rng, &mut chosen, &s[a].points, ka);
                self.take_from(rng, &mut chosen, &s[b].points, kb);
                "line_pair"
            }
            2 => "random",
            3 => {
                let p = if rng.gen_bool(0.5) {
                    self.subfield[rng.gen_range(0..self.subfield.len())]
                } else {
                    rng.gen_range(0..self.affine)
                };
                let mult = rng.gen_range(2..=m + 1 + e);
                chosen.push((p, mult));
                if rng.gen_bool(0.5) {
                    let l = self.lines[rng.gen_range(0..self.lines.len())];
                    let k = rng.gen_range(1..=l.len());
                    self.take_from(rng, &mut chosen, l, k);
                }
                "curvilinear"
            }
            _ => {
                let on = self.conic_points(rng)?;
                let k = near(rng, 2 * m + 1 + e);
                self.take_from(rng, &mut chosen, &on, k);
                "conic"
            }
        };
        target = target.max(chosen.iter().map(|c| c.1).sum::<u32>().min(3 * m));
        // trim to the target degree, then fill
        while chosen.iter().map(|c| c.1).sum::<u32>() > target {
            chosen.pop();
        }
        self.fill(rng, &mut chosen, target);
        chosen.sort_unstable();
        let entries: Vec<(ProjectivePoint, u32)> = chosen
            .iter()
            .map(|&(i, k)| (self.pts.point(i), k))
            .collect();
        let z = ZeroDimScheme::new(params, entries).ok()?;
        Some((z, m, e, kind))
    }
}

/// Random schemes inside the hypothesis window, each classified by the
/// configuration search and compared with the rank-computed h¹.
pub fn lemma_a2_sampling(
    pts: &PointSet,
    table: &SecantTable,
    samples: usize,
    seed: u64,
    budget: SearchBudget,
) -> LemmaSampling {
    let params: &CurveParams = pts.params();
    let f = &**params.field();
    let rich: Vec<&[usize]> = match table.census() {
        Some(c) => c.rich_lines().iter().map(|l| l.points.as_slice()).collect(),
        None => table
            .secants()
            .iter()
            .map(|l| l.points.as_slice())
            .collect(),
    };
    let subfield = (0..pts.affine_count())
        .filter(|&i| pts.class(i) == PointClass::Subfield)
        .collect();
    let sampler = Sampler {
        pts,
        lines: rich,
        table,
        subfield,
        affine: pts.affine_count(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = LemmaSampling {
        q: params.q(),
        attempts: 0,
        in_hypothesis: 0,
        reduced: 0,
        reduced_agree: 0,
        curvilinear: 0,
        curvilinear_agree: 0,
        positive_h1: 0,
        cases: BTreeMap::new(),
        constructions: BTreeMap::new(),
        disagreements: Vec::new(),
    };
    while out.in_hypothesis < samples && out.attempts < samples * 50 {
        out.attempts += 1;
        let Some((z, m, e, kind)) = sampler.sample(&mut rng) else {
            continue;
        };
        let r = classify_defect_cause(params, &z, m, e, Lemma::A2, budget);
        if !r.applicable {
            continue;
        }
        out.in_hypothesis += 1;
        *out.constructions.entry(kind).or_insert(0) += 1;
        if r.h1 >= e as usize {
            out.positive_h1 += 1;
        }
        if let Some(w) = &r.witness {
            *out.cases.entry(w.case).or_insert(0) += 1;
        }
        let reduced = z.is_reduced();
        if reduced {
            out.reduced += 1;
            out.reduced_agree += r.agrees as usize;
        } else {
            out.curvilinear += 1;
            out.curvilinear_agree += r.agrees as usize;
        }
        if !r.agrees {
            out.disagreements.push(SchemeDump {
                points: z
                    .entries()
                    .iter()
                    .map(|p| p.point.coords().map(|x| f.encode(x)))
                    .collect(),
                multiplicities: z.entries().iter().map(|p| p.multiplicity).collect(),
                m,
                e,
                h1: r.h1,
                witness: r.witness.map(|w| w.case),
                construction: kind,
            });
        }
    }
    out
}

struct Suite {
    claims: Vec<ClaimRecord>,
}

impl Suite {
    #[allow(clippy::too_many_arguments)]
    fn push(
        &mut self,
        id: impl Into<String>,
        paper_ref: &str,
        expected: Value,
        computed: Value,
        status: Status,
        witness: Option<Value>,
        start: Instant,
    ) {
        self.claims.push(ClaimRecord {
            id: id.into(),
            paper_ref: paper_ref.to_string(),
            expected,
            computed,
            status,
            witness,
            runtime_ms: start.elapsed().as_millis() as u64,
        });
    }

    fn compare(
        &mut self,
        id: impl Into<String>,
        paper_ref: &str,
        expected: Value,
        computed: Value,
        witness: Option<Value>,
        start: Instant,
    ) {
        let status = if expected == computed {
            Status::Match
        } else {
            Status::Mismatch
        };
        self.push(id, paper_ref, expected, computed, status, witness, start);
    }
}

fn status_of(ok: bool) -> Status {
    if ok {
        Status::Match
    } else {
        Status::Mismatch
    }
}

/// Runs the checks for `q` at the given level. Heavy is only meaningful for q = 7.
pub fn verify_suite(
    q: u32,
    level: Level,
    opts: &SuiteOptions,
) -> Result<VerificationReport, String> {
    if level == Level::Heavy && q != 7 {
        return Err("level heavy runs the q = 7 three-point checks only".into());
    }
    let mut s = Suite { claims: Vec::new() };
    let params = CurveParams::new(q).map_err(|e| e.to_string())?;
    let qq = q as u64;

    let t0 = Instant::now();
    let pts = params.enumerate_points().map_err(|e| e.to_string())?;
    s.compare(
        "point_count",
        "Theorem u5: n=|B|=q^8-q^6+q^5-2",
        json!(params.expected_point_count()),
        json!(pts.len()),
        None,
        t0,
    );
    let t0 = Instant::now();
    s.compare(
        "subfield_count",
        "classify_point: subfield-class count q^3+1",
        json!(qq.pow(3) + 1),
        json!(pts.subfield_count()),
        None,
        t0,
    );

    let t0 = Instant::now();
    let table = secant_classification(&pts).map_err(|e| e.to_string())?;
    let expected_lines = (qq + 1) * (qq.pow(5) - qq.pow(3));
    s.compare(
        "secant_count",
        "prop:NumberOfLines: is (q+1)(q^5-q^3)",
        json!(expected_lines),
        json!(table.len()),
        None,
        t0,
    );
    let t0 = Instant::now();
    let f = &**params.field();
    let z_dir = [Elem::ZERO, Elem::ZERO, Elem::ONE, Elem::ZERO];
    let parallel = table
        .secants()
        .iter()
        .all(|l| l.line.direction(f) == Some(z_dir));
    s.compare(
        "secant_direction",
        "Prop:lines: parallel to the z-axis",
        json!(true),
        json!(parallel),
        None,
        t0,
    );
    let t0 = Instant::now();
    let generic = pts.len() - pts.subfield_count();
    let each_once = (0..pts.affine_count())
        .all(|i| (pts.class(i) == PointClass::Generic) == table.secant_of(i).is_some());
    s.compare(
        "secant_partition",
        "partition remark: each point lies in exactly one of such secants",
        json!({"covered": generic, "each_generic_point_once": true}),
        json!({"covered": table.covered_points(), "each_generic_point_once": each_once}),
        None,
        t0,
    );
    if let Some(audit) = table.audit() {
        let t0 = Instant::now();
        s.compare(
            "maximal_lines_all",
            "prop:NumberOfLines: is (q+1)(q^5-q^3) (all lines with q^2-q+1 points)",
            json!(expected_lines),
            json!(audit.maximal_lines_total),
            Some(serde_json::to_value(audit).unwrap()),
            t0,
        );
        let t0 = Instant::now();
        s.compare(
            "maximal_lines_avoid_subfield",
            "Prop:lines: all the (q^2-q+1) common points are not F_{q^2}-rational",
            json!(0),
            json!(audit.maximal_lines_with_subfield_points),
            None,
            t0,
        );
        let t0 = Instant::now();
        let r = plane_section_bound_check(&pts, &table, 1, 0, opts.seed);
        let (computed, status) = match &r {
            Ok(r) => (json!(r.max_observed), Status::Match),
            Err(e) => (json!(e.to_string()), Status::Mismatch),
        };
        s.push(
            "line_section_bound",
            "Prop:lines: |r ∩ GK| ≤ q^2-q+1",
            json!(format!("≤ {}", table.order())),
            computed,
            status,
            None,
            t0,
        );
    }

    let t0 = Instant::now();
    let n = params.secant_order();
    let special: Vec<usize> = (0..pts.len())
        .filter(|&i| pts.class(i) != PointClass::Generic)
        .collect();
    let special_mults: Vec<u32> = special
        .par_iter()
        .map(|&i| {
            let p = pts.point(i);
            params
                .line_curve_multiplicity(&params.tangent_line(&p), &p)
                .unwrap()
        })
        .collect();
    let all_n = special_mults.iter().all(|&x| x == n);
    s.push(
        "tangent_special_points",
        "tangent proposition: the tangent in P is a q^2-q+1-secant (z_0 = 0 and P_∞)",
        json!(n),
        json!(special_mults
            .iter()
            .copied()
            .collect::<std::collections::BTreeSet<_>>()),
        status_of(all_n),
        None,
        t0,
    );

    if level == Level::Full {
        full_checks(&mut s, &pts, &table, opts);
    }
    if level == Level::Heavy {
        heavy_checks(&mut s, &pts, opts);
    }

    let mut summary = Summary::default();
    for c in &s.claims {
        match c.status {
            Status::Match => summary.matched += 1,
            Status::Mismatch => summary.mismatched += 1,
            Status::Partial => summary.partial += 1,
            Status::NotApplicable => summary.not_applicable += 1,
        }
    }
    Ok(VerificationReport {
        schema_version: REPORT_SCHEMA_VERSION,
        environment: Environment {
            q,
            level,
            seed: opts.seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
        },
        claims: s.claims,
        summary,
    })
}

fn full_checks(s: &mut Suite, pts: &PointSet, table: &SecantTable, opts: &SuiteOptions) {
    let params = pts.params();
    let q = params.q();
    let qq = q as u64;

    let t0 = Instant::now();
    let tr = tangent_report(pts);
    let generic: Vec<&TangentEntry> = tr
        .entries
        .iter()
        .filter(|e| e.class == PointClass::Generic)
        .collect();
    let mults: std::collections::BTreeSet<u32> = generic.iter().map(|e| e.multiplicity).collect();
    s.push(
        "tangent_generic_points",
        "tangent proposition: I(L,GK,P)=q^2-q+1 or I(L,GK,P)=q+1 (z_0 ≠ 0)",
        json!(q + 1),
        json!(mults),
        status_of(mults.len() == 1 && mults.contains(&(q + 1))),
        Some(json!({"histogram": tr.histogram, "equation_orders_sample": generic.first().map(|e| e.equation_orders)})),
        t0,
    );

    let t0 = Instant::now();
    match plane_section_bound_check(pts, table, 2, opts.conic_samples, opts.seed) {
        Ok(r) => s.push(
            "conic_section_bound",
            "§4 proposition: α(q^2-q+1) for α = 2 (sampled)",
            json!(format!("≤ {}", r.bound)),
            json!(r.max_observed),
            Status::Match,
            Some(json!({"checked": r.checked, "witness": r.witness})),
            t0,
        ),
        Err(e) => s.push(
            "conic_section_bound",
            "§4 proposition: α(q^2-q+1)",
            json!("no violation"),
            json!(e.to_string()),
            Status::Mismatch,
            None,
            t0,
        ),
    }

    let deg = qq.pow(3) as i128 + 1;
    let g = params.genus() as i128;
    for sd in section_report(pts) {
        let t0 = Instant::now();
        // independent value once the degree exceeds 2g-2
        let td = sd.t as i128 * deg;
        let rr = (td > 2 * g - 2).then_some(td - g + 1);
        s.compare(
            format!("section_dimension_t{}", sd.t),
            "§3: h^0(O_C(t)) piecewise formula with ε",
            json!(sd.formula_value),
            json!(sd.computed_rank),
            Some(json!({"riemann_roch": rr})),
            t0,
        );
    }

    // minimum distances of the one-point duals
    for m in 2..q * q {
        let t0 = Instant::now();
        let dd = designed_distance(m, q);
        let id = format!("min_distance_m{m}");
        let pref = "Prop:MinimumDistance";
        let code = match one_point_dual(pts, m) {
            Ok(c) => c,
            Err(e) => {
                s.push(
                    id,
                    pref,
                    json!(dd.value),
                    json!(e.to_string()),
                    Status::Mismatch,
                    None,
                    t0,
                );
                continue;
            }
        };
        let cert = match certified_min_distance(&code, table, None, 0, opts.seed) {
            Ok(c) => c,
            Err(e) => {
                s.push(
                    id,
                    pref,
                    json!(dd.value),
                    json!(e.to_string()),
                    Status::Mismatch,
                    None,
                    t0,
                );
                continue;
            }
        };
        let witness = Some(
            json!({"points": cert.witness.iter().map(|&c| code.points()[c]).collect::<Vec<_>>(), "lower_tag": cert.lower_tag, "notes": cert.notes}),
        );
        let computed =
            json!({"lower": cert.lower_bound, "upper": cert.upper_bound, "exact": cert.exact});
        let status = if dd.exact {
            if cert.exact {
                status_of(cert.upper_bound.map(|u| u as u64) == dd.value)
            } else if cert.upper_bound.map(|u| u as u64) == dd.value {
                Status::Partial
            } else {
                Status::Mismatch
            }
        } else if let Some(v) = dd.value {
            // only a lower bound is stated
            match (cert.lower_bound, cert.upper_bound) {
                (_, Some(u)) if (u as u64) < v => Status::Mismatch,
                (Some(l), _) if l as u64 >= v => Status::Match,
                _ => Status::Partial,
            }
        } else {
            Status::NotApplicable
        };
        s.push(
            id,
            &format!("{pref} case ({}): {}", dd.case, dd.label),
            json!(dd.value),
            computed,
            status,
            witness,
            t0,
        );
    }

    // minimum-weight counts in the punctured-family regime
    for m in (q + 1)..=(2 * (q + 1)) {
        if m + 2 > params.secant_order() {
            continue;
        }
        let t0 = Instant::now();
        let id = format!("weight_count_m{m}");
        let pref = "§4.1: A_{m+2}(C̄_S)=(ℓ+1)(ℓ^5-ℓ^3)(ℓ^6-1)binom(ℓ^2-ℓ+1,m+2), ℓ read as q";
        let Ok(code) = one_point_dual(pts, m) else {
            continue;
        };
        let lines = line_sections(&code, table);
        let formula = secant_count_formula(q, m);
        match count_min_weight(
            &code,
            m as usize + 2,
            &lines,
            Some((pref.to_string(), formula)),
        ) {
            Ok(wc) => s.compare(
                id,
                pref,
                json!(formula.to_string()),
                json!(wc.codeword_count.to_string()),
                Some(json!({"supports": wc.support_count})),
                t0,
            ),
            Err(e) => s.push(
                id,
                pref,
                json!(formula.to_string()),
                json!(e.to_string()),
                Status::Mismatch,
                None,
                t0,
            ),
        }
    }

    // puncturing at the F_{q^2}-rational points leaves every secant intact
    let t0 = Instant::now();
    let s_sub: Vec<usize> = (0..pts.affine_count())
        .filter(|&i| pts.class(i) == PointClass::Subfield)
        .collect();
    let m = q + 1;
    match punctured_dual(pts, table, &s_sub, m) {
        Ok((_, rep)) => {
            s.compare(
                "punctured_subfield_survival",
                "§4.1: S_1={P∈S : P∈GK(F_{q^2})}",
                json!({"damaged": 0, "s1": s_sub.len(), "s2": 0}),
                json!({"damaged": rep.damaged.len(), "s1": rep.s1, "s2": rep.s2}),
                None,
                t0,
            );
            let t0 = Instant::now();
            s.compare(
                "punctured_hypothesis_bound",
                "§4.1: |S_2|< (q^2-q+1-m)(q+1)(q^5-q) against the secant count (q+1)(q^5-q^3)",
                json!(rep.bound_stated.to_string()),
                json!(rep.bound_secant_count.to_string()),
                None,
                t0,
            );
        }
        Err(e) => s.push(
            "punctured_subfield_survival",
            "§4.1",
            json!("built"),
            json!(e.to_string()),
            Status::Mismatch,
            None,
            t0,
        ),
    }

    let t0 = Instant::now();
    let ls = lemma_a2_sampling(pts, table, opts.lemma_samples, opts.seed, opts.budget);
    let status = if ls.in_hypothesis < opts.lemma_samples {
        Status::Partial
    } else {
        status_of(ls.reduced_agree == ls.reduced && ls.curvilinear_agree == ls.curvilinear)
    };
    s.push(
        "lemma_a2_sampling",
        "Lemma a2: h^1(I_Z(m)) ≥ e if and only if there is W ⊆ Z occurring in this list",
        json!({"agreement": ls.in_hypothesis}),
        json!({"agreement": ls.reduced_agree + ls.curvilinear_agree, "reduced": ls.reduced, "curvilinear": ls.curvilinear}),
        status,
        Some(json!({"positive_h1": ls.positive_h1, "cases": ls.cases, "constructions": ls.constructions, "disagreements": ls.disagreements})),
        t0,
    );
}

fn heavy_checks(s: &mut Suite, pts: &PointSet, opts: &SuiteOptions) {
    let params = pts.params();
    let f = &**params.field();
    let c = |x: i64| f.from_int(x);
    let p = [
        [c(0), c(0), c(0), c(1)],
        [c(1), c(3), c(0), c(1)],
        [c(1), c(4), c(0), c(1)],
    ];
    let (d, a) = (6, [6, 3, 3]);
    let t0 = Instant::now();
    let (code, rep) = match three_point_code(pts, p, d, a) {
        Ok(x) => x,
        Err(e) => {
            s.push(
                "three_point_dimension",
                "Theorem u5",
                json!(72),
                json!(e.to_string()),
                Status::Mismatch,
                None,
                t0,
            );
            return;
        }
    };
    s.compare(
        "three_point_dimension",
        "Theorem u5: dimension k=binom(d+3,3)-a_1-a_2-a_3",
        json!(72),
        json!(code.dimension()),
        Some(serde_json::to_value(code.dimension_log()).unwrap()),
        t0,
    );
    let t0 = Instant::now();
    s.compare(
        "three_point_length",
        "Theorem u5: n=|B|=q^8-q^6+q^5-2",
        json!(params.expected_point_count() - 3),
        json!(code.len()),
        None,
        t0,
    );
    let t0 = Instant::now();
    s.compare(
        "three_point_line_sections",
        "§4.2 example: |L_i ∩ GK| = 8",
        json!([8, 8, 8]),
        json!(rep.sections),
        None,
        t0,
    );

    let t0 = Instant::now();
    let formula = three_point_formula(params.q(), rep.sections, d);
    s.compare(
        "three_point_a6_formula",
        "§4.2 example: A_6(C)=(7^6-1)3binom(8,6)=(7^6-1)84",
        json!(((7u128.pow(6) - 1) * 84).to_string()),
        json!(formula.to_string()),
        None,
        t0,
    );

    let t0 = Instant::now();
    let lines: Vec<Vec<usize>> = rep.b_on_lines.to_vec();
    let sizes: Vec<usize> = lines.iter().map(Vec::len).collect();
    match count_min_weight(&code, d as usize, &lines, None) {
        Ok(wc) => s.compare(
            "three_point_weight6_supports",
            "Theorem u5 corollary: support is formed by d points of B∩L_i",
            json!(84),
            json!(wc.support_count),
            Some(json!({"b_on_lines": sizes})),
            t0,
        ),
        Err(e) => s.push(
            "three_point_weight6_supports",
            "Theorem u5 corollary",
            json!(84),
            json!(e.to_string()),
            Status::Mismatch,
            Some(json!({"b_on_lines": sizes})),
            t0,
        ),
    }

    let t0 = Instant::now();
    let dependent = random_subset_dependencies(&code, 5, opts.random_subsets, opts.seed);
    s.compare(
        "three_point_random_5_subsets",
        "Theorem u5: minimum distance d (sampled below d)",
        json!(0),
        json!(dependent.len()),
        Some(json!({"samples": opts.random_subsets, "dependent": dependent.iter().take(5).collect::<Vec<_>>()})),
        t0,
    );
}

/// Random `size`-subsets of columns that turn out dependent.
pub fn random_subset_dependencies(
    code: &EvaluationCode,
    size: usize,
    samples: usize,
    seed: u64,
) -> Vec<Vec<usize>> {
    let n = code.len();
    (0..samples)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng =
                ChaCha8Rng::seed_from_u64(seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let idx = rand::seq::index::sample(&mut rng, n, size).into_vec();
            (code.column_rank(&idx) < size).then_some(idx)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smoke_q2() {
        let r = verify_suite(2, Level::Smoke, &SuiteOptions::default()).unwrap();
        assert_eq!(r.claim("point_count").unwrap().status, Status::Match);
        assert_eq!(r.claim("secant_count").unwrap().status, Status::Match);
        assert_eq!(r.claim("secant_partition").unwrap().status, Status::Match);
        assert_eq!(
            r.claim("tangent_special_points").unwrap().status,
            Status::Match
        );
        // at q = 2 the (q+1)-secants through subfield points also carry q²-q+1 points
        assert_eq!(
            r.claim("maximal_lines_all").unwrap().status,
            Status::Mismatch
        );
        assert!(verify_suite(2, Level::Heavy, &SuiteOptions::default()).is_err());
    }

    #[test]
    fn tangent_report_q2() {
        let c = CurveParams::new(2).unwrap();
        let pts = c.enumerate_points().unwrap();
        let r = tangent_report(&pts);
        assert_eq!(r.entries.len(), 225);
        assert_eq!(r.histogram.get("subfield:3"), Some(&8));
        assert_eq!(r.histogram.get("infinity:3"), Some(&1));
        assert_eq!(r.histogram.get("generic:2"), Some(&216));
        assert_eq!(r.disagreements, 216);
    }
}
