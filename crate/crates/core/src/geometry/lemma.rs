//! Searches for the geometric configurations that explain a positive h¹:
//! collinear, coconic and plane-cubic subschemes, pairs of skew lines, and a
//! sampled family of space cubics. Every search result is cross-checked
//! against the rank-computed h¹.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::curve::CurveParams;
use crate::gf::{Elem, Field};
use crate::linalg::Matrix;
use crate::poly::{monomial_basis, Form};

use super::conic::Conic;
use super::line::{normalize, Line};
use super::scheme::{cohomology_defect, condition_matrix, ZeroDimScheme};
use super::secant::plane_through;

/// Which classification statement to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Lemma {
    /// Lines, reduced conics, two skew lines; `deg Z ≤ 3m + r - 3`.
    A2,
    /// Lines or conics; `m ≥ 3`, spanning, `deg Z < 3m`.
    Z1,
    /// Lines, conics, plane cubics, connected space cubics.
    X1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    Line,
    Conic,
    SkewLines,
    PlaneCubic,
    SpaceCubic,
}

/// A subscheme `W ⊆ Z` of the stated degree lying on the stated curve.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    /// Case letter of the statement.
    pub case: char,
    pub kind: WitnessKind,
    pub degree: u32,
    /// `(scheme entry, multiplicity in W)`
    pub entries: Vec<(usize, u32)>,
    /// The split `f` for skew lines.
    pub f: Option<u32>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DefectClassification {
    pub lemma: Lemma,
    pub m: u32,
    pub e: u32,
    pub degree: u32,
    pub span_dimension: i32,
    pub applicable: bool,
    /// The hypothesis that failed, when not applicable.
    pub inapplicable: Option<String>,
    pub h1: usize,
    pub witness: Option<Witness>,
    /// Witness found ⟺ h¹ ≥ e (for z1 and x1, e = 1).
    pub agrees: bool,
    /// "complete", or "sampled" when a case was only searched over a sample.
    pub coverage: &'static str,
}

/// Search limits.
#[derive(Debug, Clone, Copy)]
pub struct SearchBudget {
    pub conic_subschemes: usize,
    pub cubic_subsets: usize,
    pub space_cubics: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            conic_subschemes: 200_000,
            cubic_subsets: 20_000,
            space_cubics: 200_000,
        }
    }
}

struct LineHit {
    line: Line,
    contacts: Vec<u32>,
    degree: u32,
}

struct Searcher<'a> {
    f: &'a Field,
    z: &'a ZeroDimScheme,
    lines: Vec<LineHit>,
    planes: Vec<([Elem; 4], Vec<u32>, u32)>,
}

impl<'a> Searcher<'a> {
    fn new(params: &'a CurveParams, z: &'a ZeroDimScheme) -> Searcher<'a> {
        let f = &**params.field();
        let pts: Vec<[Elem; 4]> = z.entries().iter().map(|e| *e.point.coords()).collect();
        let mut lines = BTreeSet::new();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                lines.insert(Line::through(f, &pts[i], &pts[j]).unwrap());
            }
            if z.entries()[i].multiplicity > 1 {
                lines.insert(params.tangent_line(&z.entries()[i].point));
            }
        }
        let lines: Vec<LineHit> = lines
            .into_iter()
            .map(|line| {
                let contacts = z.contacts(f, &line.forms().map(Form::linear));
                let degree = contacts.iter().sum();
                LineHit {
                    line,
                    contacts,
                    degree,
                }
            })
            .collect();

        let mut planes = BTreeSet::new();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                for k in j + 1..pts.len() {
                    if let Some(h) = plane_through(f, &[pts[i], pts[j], pts[k]]) {
                        planes.insert(h);
                    }
                }
            }
        }
        // planes through tangent lines and osculating planes
        for (i, e) in z.entries().iter().enumerate() {
            if e.multiplicity < 2 {
                continue;
            }
            let tangent = params.tangent_line(&e.point).spanning_points(f);
            for (j, p) in pts.iter().enumerate() {
                if j != i {
                    if let Some(h) = plane_through(f, &[tangent[0], tangent[1], *p]) {
                        planes.insert(h);
                    }
                }
            }
            if e.multiplicity >= 3 {
                let w = z.restrict_to(&[i]).with_multiplicities(&[3]);
                let ns = condition_matrix(f, &w, 1).matrix.nullspace(f);
                if ns.len() == 1 {
                    planes.insert(normalize(f, [ns[0][0], ns[0][1], ns[0][2], ns[0][3]]).unwrap());
                }
            }
        }
        let planes = planes
            .into_iter()
            .map(|h| {
                let contacts = z.contacts(f, &[Form::linear(h)]);
                let degree = contacts.iter().sum();
                (h, contacts, degree)
            })
            .collect();
        Searcher {
            f,
            z,
            lines,
            planes,
        }
    }

    fn max_plane_degree(&self) -> u32 {
        self.planes
            .iter()
            .map(|p| p.2)
            .max()
            .unwrap_or(self.z.degree().min(3))
    }

    fn line_witness(&self, case: char, need: u32) -> Option<Witness> {
        self.lines
            .iter()
            .find(|l| l.degree >= need)
            .map(|l| Witness {
                case,
                kind: WitnessKind::Line,
                degree: need,
                entries: trim(&l.contacts, need),
                f: None,
            })
    }

    fn conic_witness(
        &self,
        case: char,
        need: u32,
        reduced_only: bool,
        budget: usize,
    ) -> Option<Witness> {
        let f = self.f;
        let accept = |c: &Conic| -> Option<Witness> {
            if reduced_only && !c.is_reduced() {
                return None;
            }
            let contacts = self.z.contacts(f, &c.forms());
            let deg: u32 = contacts.iter().sum();
            (deg >= need).then(|| Witness {
                case,
                kind: WitnessKind::Conic,
                degree: need,
                entries: trim(&contacts, need),
                f: None,
            })
        };
        // reducible: two coplanar lines, each carrying at least two points
        for (i, a) in self.lines.iter().enumerate() {
            for b in &self.lines[i + 1..] {
                if a.degree + b.degree < need {
                    continue;
                }
                if let Some(c) = Conic::line_pair(f, &a.line, &b.line) {
                    if let Some(w) = accept(&c) {
                        return Some(w);
                    }
                }
            }
        }
        // any conic through a length-5 subscheme of a rich plane section
        let mut spent = 0;
        let mut tried = BTreeSet::new();
        for (h, contacts, deg) in &self.planes {
            if *deg < need.max(5) {
                continue;
            }
            for mults in subschemes_of_degree(contacts, 5, budget.saturating_sub(spent)) {
                spent += 1;
                let w = self.z.with_multiplicities(&mults);
                let Some(c) = Conic::unique_through(f, *h, &w) else {
                    continue;
                };
                if !tried.insert(
                    c.quadric()
                        .coeffs()
                        .iter()
                        .map(|e| e.encoded())
                        .chain(h.iter().map(|e| e.encoded()))
                        .collect::<Vec<_>>(),
                ) {
                    continue;
                }
                if let Some(w) = accept(&c) {
                    return Some(w);
                }
            }
        }
        None
    }

    fn skew_witness(&self, m: u32, e: u32) -> Option<Witness> {
        if e < 2 {
            return None;
        }
        let rich: Vec<&LineHit> = self.lines.iter().filter(|l| l.degree >= m + 2).collect();
        for (i, a) in rich.iter().enumerate() {
            for b in &rich[i + 1..] {
                let (s1, s2) = (a.degree - m - 1, b.degree - m - 1);
                if s1 + s2 < e || !a.line.is_disjoint_from(self.f, &b.line) {
                    continue;
                }
                let fsplit = s1.min(e - 1);
                let mut entries = trim(&a.contacts, m + 1 + fsplit);
                entries.extend(trim(&b.contacts, m + 1 + e - fsplit));
                entries.sort_unstable();
                return Some(Witness {
                    case: 'c',
                    kind: WitnessKind::SkewLines,
                    degree: 2 * m + 2 + e,
                    entries,
                    f: Some(fsplit),
                });
            }
        }
        None
    }

    /// A subscheme of degree ≥ 3m on a plane cubic; whole plane sections are
    /// tried first, then sections with one or two points dropped.
    fn cubic_witness(&self, m: u32, budget: usize) -> Option<Witness> {
        let f = self.f;
        let mut spent = 0;
        for (h, contacts, deg) in &self.planes {
            if *deg < 3 * m {
                continue;
            }
            let support: Vec<usize> = (0..contacts.len()).filter(|&i| contacts[i] > 0).collect();
            for drop in 0..=2usize {
                for removed in combinations(support.len(), drop) {
                    if spent >= budget {
                        return None;
                    }
                    spent += 1;
                    let mut mults = contacts.clone();
                    for r in &removed {
                        mults[support[*r]] = 0;
                    }
                    let d: u32 = mults.iter().sum();
                    if d < 3 * m {
                        continue;
                    }
                    if on_plane_cubic(f, h, &self.z.with_multiplicities(&mults)) {
                        let case = if d == 3 * m { 'c' } else { 'd' };
                        let entries = mults
                            .iter()
                            .enumerate()
                            .filter(|(_, &k)| k > 0)
                            .map(|(i, &k)| (i, k))
                            .collect();
                        return Some(Witness {
                            case,
                            kind: WitnessKind::PlaneCubic,
                            degree: d,
                            entries,
                            f: None,
                        });
                    }
                }
            }
        }
        None
    }

    /// Chains of three lines and line-conic pairs meeting in a point, spanning
    /// space, carrying `3m + 2` points (sampled family; reduced contacts).
    fn space_cubic_witness(&self, m: u32, budget: usize) -> Option<Witness> {
        let f = self.f;
        let need = 3 * m + 2;
        let mut spent = 0;
        let n = self.lines.len();
        for a in 0..n {
            for b in 0..n {
                if a == b || self.lines[a].line.is_disjoint_from(f, &self.lines[b].line) {
                    continue;
                }
                for c in a + 1..n {
                    if c == b || self.lines[b].line.is_disjoint_from(f, &self.lines[c].line) {
                        continue;
                    }
                    spent += 1;
                    if spent > budget {
                        return None;
                    }
                    let parts = [&self.lines[a], &self.lines[b], &self.lines[c]];
                    let bound: u32 = parts.iter().map(|l| l.degree).sum();
                    if bound < need || !spans_space(f, &parts.map(|l| &l.line)) {
                        continue;
                    }
                    let contacts: Vec<u32> = (0..self.z.len())
                        .map(|i| parts.iter().map(|l| l.contacts[i]).max().unwrap())
                        .collect();
                    if contacts.iter().sum::<u32>() >= need {
                        return Some(Witness {
                            case: 'e',
                            kind: WitnessKind::SpaceCubic,
                            degree: need,
                            entries: trim(&contacts, need),
                            f: None,
                        });
                    }
                }
            }
        }
        None
    }
}

/// Keeps contacts in entry order until `need` is reached.
fn trim(contacts: &[u32], need: u32) -> Vec<(usize, u32)> {
    let mut left = need;
    let mut out = Vec::new();
    for (i, &c) in contacts.iter().enumerate() {
        if left == 0 {
            break;
        }
        if c > 0 {
            let k = c.min(left);
            out.push((i, k));
            left -= k;
        }
    }
    out
}

/// Multiplicity vectors `0 ≤ k_i ≤ caps_i` with `Σ k_i = total`, in
/// lexicographic order of the chosen support, at most `limit` of them.
pub fn subschemes_of_degree(caps: &[u32], total: u32, limit: usize) -> Vec<Vec<u32>> {
    fn rec(
        caps: &[u32],
        i: usize,
        left: u32,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if left == 0 {
            let mut v = cur.clone();
            v.resize(caps.len(), 0);
            out.push(v);
            return;
        }
        if i == caps.len() {
            return;
        }
        let remaining: u32 = caps[i..].iter().sum();
        if remaining < left {
            return;
        }
        for k in (0..=caps[i].min(left)).rev() {
            cur.push(k);
            rec(caps, i + 1, left - k, cur, out, limit);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(caps, 0, total, &mut Vec::new(), &mut out, limit);
    out
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

fn on_plane_cubic(f: &Field, plane: &[Elem; 4], w: &ZeroDimScheme) -> bool {
    let v = plane.iter().position(|e| !e.is_zero()).unwrap();
    let kept: Vec<usize> = monomial_basis(3)
        .iter()
        .enumerate()
        .filter(|(_, m)| m[v] == 0)
        .map(|(i, _)| i)
        .collect();
    let cm = condition_matrix(f, w, 3).matrix.select_columns(&kept);
    cm.rank(f) < kept.len()
}

fn spans_space(f: &Field, lines: &[&Line]) -> bool {
    let rows: Vec<Vec<Elem>> = lines
        .iter()
        .flat_map(|l| l.spanning_points(f))
        .map(|p| p.to_vec())
        .collect();
    Matrix::from_rows(4, rows).rank(f) == 4
}

/// Checks a scheme against one of the classification statements: the
/// hypotheses are evaluated, a witness is searched for, and the outcome is
/// compared with the h¹ computed from the condition matrix.
pub fn classify_defect_cause(
    params: &CurveParams,
    z: &ZeroDimScheme,
    m: u32,
    e: u32,
    lemma: Lemma,
    budget: SearchBudget,
) -> DefectClassification {
    let f = &**params.field();
    let degree = z.degree();
    let span_dimension = z.span_dimension(f);
    let h1 = cohomology_defect(f, z, m).h1;
    let s = Searcher::new(params, z);
    let mut coverage = "complete";
    let (inapplicable, witness, threshold) = match lemma {
        Lemma::A2 => {
            let r = span_dimension.max(2);
            let mut why = None;
            if m == 0 || e == 0 {
                why = Some("m and e must be positive".to_string());
            } else if degree as i64 > 3 * m as i64 + r as i64 - 3 {
                why = Some(format!(
                    "deg(Z) = {degree} > 3m + r - 3 = {}",
                    3 * m as i32 + r - 3
                ));
            }
            let w = s
                .line_witness('a', m + 1 + e)
                .or_else(|| s.conic_witness('b', 2 * m + 1 + e, true, budget.conic_subschemes))
                .or_else(|| if r >= 3 { s.skew_witness(m, e) } else { None });
            (why, w, e as usize)
        }
        Lemma::Z1 => {
            let mut why = None;
            if m < 3 {
                why = Some("m < 3".to_string());
            } else if span_dimension < 3 {
                why = Some("Z does not span P³".to_string());
            } else if degree >= 3 * m {
                why = Some(format!("deg(Z) = {degree} ≥ 3m = {}", 3 * m));
            }
            let w = s
                .line_witness('a', m + 2)
                .or_else(|| s.conic_witness('b', 2 * m + 2, false, budget.conic_subschemes));
            (why, w, 1)
        }
        Lemma::X1 => {
            let a_deg: u32 = z
                .entries()
                .iter()
                .filter(|e| e.multiplicity > 1)
                .map(|e| e.multiplicity)
                .sum();
            let plane_max = s.max_plane_degree();
            let mut why = Vec::new();
            if a_deg >= 3 * m {
                why.push(format!("deg(A) = {a_deg} ≥ 3m"));
            }
            if degree > 4 * m + 2 {
                why.push(format!("deg(Z) = {degree} > 4m + 2"));
            }
            if plane_max as i64 > 4 * m as i64 - 5 {
                why.push(format!("a plane section has degree {plane_max} > 4m - 5"));
            }
            coverage = "sampled";
            let w = s
                .line_witness('a', m + 2)
                .or_else(|| s.conic_witness('b', 2 * m + 2, false, budget.conic_subschemes))
                .or_else(|| s.cubic_witness(m, budget.cubic_subsets))
                .or_else(|| s.space_cubic_witness(m, budget.space_cubics));
            ((!why.is_empty()).then(|| why.join("; ")), w, 1)
        }
    };
    let agrees = witness.is_some() == (h1 >= threshold);
    DefectClassification {
        lemma,
        m,
        e,
        degree,
        span_dimension,
        applicable: inapplicable.is_none(),
        inapplicable,
        h1,
        witness,
        agrees,
        coverage,
    }
}
