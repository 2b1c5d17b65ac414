//! Acceptance checks, one line per criterion. Tolerances are exact unless a
//! runtime limit is stated. Criterion 7 runs at q = 7 and needs
//! `--include-ignored` (or `GKCODES_HEAVY=1`).

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gkcodes::codes::{build_code, dual_support_space, one_point_dual, three_point_code};
use gkcodes::geometry::lemma::combinations;
use gkcodes::geometry::{secant_classification, SearchBudget};
use gkcodes::report::{
    lemma_a2_sampling, random_subset_dependencies, section_report, tangent_report,
};
use gkcodes::weights::{
    certified_min_distance, count_min_weight, exhaustive_dependence_search, line_sections,
    secant_count_formula, three_point_formula, weight_hierarchy,
};
use gkcodes::{CurveParams, Elem, Field, Matrix, PointClass, PointSet, ZeroDimScheme};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn curve(q: u32) -> (CurveParams, PointSet, Duration) {
    let c = CurveParams::new(q).unwrap();
    let t = Instant::now();
    let pts = c.enumerate_points().unwrap();
    (c, pts, t.elapsed())
}

/// Affine solutions counted straight from the two equations, plus P∞.
fn brute_point_count(f: &Field, q: u64) -> (u64, u64) {
    let n = q * q - q + 1;
    let elems: Vec<Elem> = f.elements().collect();
    let in_fq2 = |a: Elem| f.pow_u(a, q * q) == a;
    let mut zpow: HashMap<Elem, u64> = HashMap::new();
    let mut zsub: HashMap<Elem, u64> = HashMap::new();
    for &z in &elems {
        *zpow.entry(f.pow_u(z, n)).or_insert(0) += 1;
    }
    for &z in &elems {
        if in_fq2(z) {
            *zsub.entry(f.pow_u(z, n)).or_insert(0) += 1;
        }
    }
    let (mut total, mut sub) = (1, 1);
    for &y in &elems {
        let rhs_z = f.sub(f.pow_u(y, q * q), y);
        let nz = zpow.get(&rhs_z).copied().unwrap_or(0);
        let yq1 = f.pow_u(y, q + 1);
        for &x in &elems {
            if f.add(f.pow_u(x, q), x) == yq1 {
                total += nz;
                if in_fq2(x) && in_fq2(y) {
                    sub += zsub.get(&rhs_z).copied().unwrap_or(0);
                }
            }
        }
    }
    (total, sub)
}

fn criterion_1() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for (q, want, limit) in [(2u32, 225usize, 5u64), (3, 6076, 60)] {
        let (c, pts, dt) = curve(q);
        let (brute, _) = brute_point_count(c.field(), q as u64);
        let ok = pts.len() == want && brute == want as u64 && dt < Duration::from_secs(limit);
        pass &= ok;
        parts.push(format!(
            "q={q}: {} points (oracle {brute}) in {:.2?}",
            pts.len(),
            dt
        ));
    }
    outcome(pass, parts.join("; "))
}

fn criterion_2() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for (q, want, covered) in [(2u32, 72usize, 216usize), (3, 864, 6048)] {
        let (c, pts, _) = curve(q);
        let f = &**c.field();
        let t = secant_classification(&pts).unwrap();
        let order = c.secant_order() as usize;
        let z_dir = [Elem::ZERO, Elem::ZERO, Elem::ONE, Elem::ZERO];
        let mut seen = vec![0u32; pts.len()];
        let mut ok = t.len() == want;
        for l in t.secants() {
            ok &= l.points.len() == order && l.line.direction(f) == Some(z_dir);
            for &i in &l.points {
                ok &= l.line.contains(f, &pts.coords(i));
                seen[i] += 1;
            }
        }
        // oracle: group the generic points by their (x, y)
        let mut groups: HashMap<(Elem, Elem), usize> = HashMap::new();
        for i in 0..pts.affine_count() {
            if pts.class(i) == PointClass::Generic {
                let [x, y, _] = pts.affine(i).unwrap();
                *groups.entry((x, y)).or_insert(0) += 1;
            }
        }
        let full_groups = groups.values().filter(|&&s| s == order).count();
        let generic_once =
            (0..pts.len()).all(|i| seen[i] == (pts.class(i) == PointClass::Generic) as u32);
        ok &= generic_once
            && full_groups == want
            && seen.iter().filter(|&&s| s == 1).count() == covered;
        pass &= ok;
        parts.push(format!("q={q}: {} secants of order {order}, {} points covered once, oracle groups {full_groups}", t.len(), seen.iter().filter(|&&s| s == 1).count()));
    }
    outcome(pass, parts.join("; "))
}

fn criterion_3() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for (q, want) in [(2u32, 9usize), (3, 28)] {
        let (c, pts, _) = curve(q);
        let (_, oracle) = brute_point_count(c.field(), q as u64);
        let n = pts.subfield_count();
        let classes = (0..pts.len())
            .filter(|&i| pts.class(i) != PointClass::Generic)
            .count();
        let ok = n == want && classes == want && oracle == want as u64;
        pass &= ok;
        parts.push(format!(
            "q={q}: {n} subfield/infinity points (oracle {oracle})"
        ));
    }
    outcome(pass, parts.join("; "))
}

fn criterion_4() -> Outcome {
    let t0 = Instant::now();
    let (_, pts, _) = curve(3);
    let table = secant_classification(&pts).unwrap();
    let mut parts = Vec::new();
    let mut pass = true;
    for m in 2..=7u32 {
        let code = one_point_dual(&pts, m).unwrap();
        let cert = certified_min_distance(&code, &table, None, 200, 0).unwrap();
        let witness_ok = cert
            .witness_check
            .as_ref()
            .is_some_and(|c| c.is_weight_support());
        let ok = match m {
            2..=5 => cert.exact && cert.upper_bound == Some(m as usize + 2),
            6 => cert.exact && cert.upper_bound == Some(14),
            _ => cert.upper_bound == Some(21),
        } && witness_ok;
        pass &= ok;
        parts.push(format!(
            "m={m}: [{:?}, {:?}]",
            cert.lower_bound, cert.upper_bound
        ));
    }
    let dt = t0.elapsed();
    pass &= dt < Duration::from_secs(600);
    outcome(pass, format!("{} in {:.2?}", parts.join(" "), dt))
}

fn criterion_5() -> Outcome {
    let (_, pts, _) = curve(2);
    let code = one_point_dual(&pts, 2).unwrap();
    // sizes are searched in increasing order, so a size-6 hit rules out 1..=5
    let r = exhaustive_dependence_search(&code, 6, u64::MAX);
    let pass = r.complete
        && r.searched_through >= 5
        && r.found
            .as_ref()
            .is_some_and(|s| s.len() == 6 && code.column_rank(s) < 6);
    outcome(
        pass,
        format!(
            "none through size {}, smallest dependent set {:?}",
            r.found.as_ref().map_or(6, |s| s.len() - 1),
            r.found
        ),
    )
}

fn criterion_6() -> Outcome {
    let (_, pts, _) = curve(3);
    let table = secant_classification(&pts).unwrap();
    let mut parts = Vec::new();
    let mut pass = true;
    for (m, stated) in [(4u32, 4_402_944u128), (5, 628_992)] {
        let code = one_point_dual(&pts, m).unwrap();
        let lines = line_sections(&code, &table);
        let formula = secant_count_formula(3, m);
        match count_min_weight(
            &code,
            m as usize + 2,
            &lines,
            Some(("closed form".into(), formula)),
        ) {
            Ok(wc) => {
                let ok = wc.codeword_count == stated && formula == stated;
                pass &= ok;
                parts.push(format!(
                    "A_{} = {} over {} supports (formula {formula})",
                    m + 2,
                    wc.codeword_count,
                    wc.support_count
                ));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("m={m}: {e}"));
            }
        }
    }
    outcome(pass, parts.join("; "))
}

fn criterion_7() -> Outcome {
    let t0 = Instant::now();
    let (c, pts, _) = curve(7);
    let f = &**c.field();
    let p = |v: [i64; 4]| v.map(|x| f.from_int(x));
    let (code, rep) = three_point_code(
        &pts,
        [p([0, 0, 0, 1]), p([1, 3, 0, 1]), p([1, 4, 0, 1])],
        6,
        [6, 3, 3],
    )
    .unwrap();
    let k_ok = code.dimension() == 72;
    let sec_ok = rep.sections == [8, 8, 8];
    let formula = three_point_formula(7, rep.sections, 6);
    let formula_ok = formula == (7u128.pow(6) - 1) * 84;
    let mut supports = 0;
    let mut supports_ok = true;
    for l in &rep.b_on_lines {
        for s in combinations(l.len(), 6) {
            let cols: Vec<usize> = s.iter().map(|&i| l[i]).collect();
            supports += 1;
            supports_ok &= dual_support_space(&code, &cols).dimension == 1;
        }
    }
    let dependent = random_subset_dependencies(&code, 5, 100_000, 0);
    let dt = t0.elapsed();
    let pass = k_ok
        && sec_ok
        && formula_ok
        && supports_ok
        && supports == 84
        && dependent.is_empty()
        && dt < Duration::from_secs(1800);
    outcome(
        pass,
        format!(
            "k = {}, sections {:?}, |B ∩ L_i| = {:?}, {supports} six-point supports checked (84 expected, all dim 1: {supports_ok}), formula {formula}, {} dependent random 5-subsets, {:.2?}",
            code.dimension(),
            rep.sections,
            rep.b_on_lines.iter().map(Vec::len).collect::<Vec<_>>(),
            dependent.len(),
            dt
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for q in [2u32, 3] {
        let (_, pts, _) = curve(q);
        let table = secant_classification(&pts).unwrap();
        let s = lemma_a2_sampling(&pts, &table, 500, 0, SearchBudget::default());
        let structured = s
            .constructions
            .iter()
            .filter(|(k, _)| **k != "random")
            .map(|(_, v)| v)
            .sum::<usize>();
        let ok = s.in_hypothesis >= 500 && s.reduced_agree == s.reduced && structured > 0;
        pass &= ok;
        for d in &s.disagreements {
            eprintln!("  lemma dump q={q}: {}", serde_json::to_string(d).unwrap());
        }
        parts.push(format!(
            "q={q}: {} schemes, reduced {}/{}, curvilinear {}/{}, h1 >= e in {}",
            s.in_hypothesis,
            s.reduced_agree,
            s.reduced,
            s.curvilinear_agree,
            s.curvilinear,
            s.positive_h1
        ));
    }
    outcome(pass, parts.join("; "))
}

/// Smallest `s` with some `s`-subset of columns carrying `v` dual dimensions.
fn brute_ghw(cols: &[Vec<Elem>], rows: usize, f: &Field, v: usize) -> Option<usize> {
    (v..=cols.len()).find(|&s| {
        combinations(cols.len(), s).iter().any(|c| {
            let sel: Vec<Vec<Elem>> = c.iter().map(|&i| cols[i].clone()).collect();
            s - Matrix::from_columns(rows, &sel).rank(f) >= v
        })
    })
}

fn criterion_9() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (q, d, n) in [(2u32, 1u32, 14usize), (2, 2, 16), (3, 1, 12), (3, 2, 14)] {
        let (_, pts, _) = curve(q);
        let table = secant_classification(&pts).unwrap();
        // one secant plus random affine points
        let mut b: Vec<usize> = table.secants()[rng.gen_range(0..table.len())]
            .points
            .clone();
        while b.len() < n {
            let i = rng.gen_range(0..pts.affine_count());
            if !b.contains(&i) {
                b.push(i);
            }
        }
        let code = build_code(&pts, b, d, ZeroDimScheme::empty()).unwrap();
        let f = code.field();
        let cols: Vec<Vec<Elem>> = (0..code.len()).map(|c| code.column(c)).collect();
        let h = weight_hierarchy(&code, 3, n, &line_sections(&code, &table), u64::MAX);
        let mut ok = h.strictly_increasing && h.within_singleton;
        let mut vals = Vec::new();
        for e in &h.entries {
            let brute = brute_ghw(&cols, cols[0].len(), f, e.v);
            ok &= e.value == brute && e.exact;
            vals.push(format!("{:?}", e.value));
        }
        pass &= ok;
        parts.push(format!("q={q} d={d} n={n}: d_1..3 = {}", vals.join(",")));
    }
    outcome(pass, parts.join("; "))
}

fn criterion_10() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for q in [2u32, 3] {
        let (c, pts, _) = curve(q);
        let a = serde_json::to_string(&tangent_report(&pts)).unwrap();
        let b = serde_json::to_string(&tangent_report(&pts)).unwrap();
        let tr = tangent_report(&pts);
        let sa = serde_json::to_string(&section_report(&pts)).unwrap();
        let sb = serde_json::to_string(&section_report(&pts)).unwrap();
        let sections = section_report(&pts);
        let ok = a == b
            && sa == sb
            && tr.entries.len() == pts.len()
            && sections.len() == 2 * c.b() as usize + 1;
        pass &= ok;
        parts.push(format!(
            "q={q}: tangent entries {} ({} off the stated value), section rows {} ({} off the formula)",
            tr.entries.len(),
            tr.disagreements,
            sections.len(),
            sections.iter().filter(|s| !s.matches).count()
        ));
    }
    outcome(pass, parts.join("; "))
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let heavy = args
        .iter()
        .any(|a| a == "--include-ignored" || a == "--ignored")
        || std::env::var("GKCODES_HEAVY").is_ok_and(|v| v == "1");
    // `--list` comes from `cargo test -- --list`; nothing to enumerate here
    if args.iter().any(|a| a == "--list") {
        return;
    }
    let filter: Vec<&String> = args
        .iter()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let criteria: [(u32, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let mut failed = 0;
    for (n, run) in criteria {
        let name = format!("criterion_{n}");
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        if n == 7 && !heavy {
            println!("criterion {n}: SKIP (q = 7, run with --include-ignored)");
            continue;
        }
        let t = Instant::now();
        let o = run();
        println!(
            "criterion {n}: {} ({:.1?}) {}",
            if o.pass { "PASS" } else { "FAIL" },
            t.elapsed(),
            o.detail
        );
        failed += !o.pass as usize;
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
