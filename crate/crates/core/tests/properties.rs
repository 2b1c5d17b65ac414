use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::sample::subsequence;

use gkcodes::codes::{
    code_dimension, dual_support_h1_check, dual_support_space, one_point_dual, punctured_dual,
};
use gkcodes::geometry::{cohomology_defect, condition_matrix, secant_classification, SecantTable};
use gkcodes::weights::verify_weight_support;
use gkcodes::{CurveParams, Elem, EvaluationCode, Field, Matrix, PointSet, ZeroDimScheme};

fn q2() -> &'static (CurveParams, PointSet, SecantTable) {
    static C: OnceLock<(CurveParams, PointSet, SecantTable)> = OnceLock::new();
    C.get_or_init(|| {
        let c = CurveParams::new(2).unwrap();
        let pts = c.enumerate_points().unwrap();
        let t = secant_classification(&pts).unwrap();
        (c, pts, t)
    })
}

fn code_m2() -> &'static EvaluationCode {
    static C: OnceLock<EvaluationCode> = OnceLock::new();
    C.get_or_init(|| one_point_dual(&q2().1, 2).unwrap())
}

fn field(p: u32, k: u32) -> std::sync::Arc<Field> {
    Field::new(p, k).unwrap()
}

fn elem(f: &Field, n: u64) -> Elem {
    f.decode(n % f.order() as u64).unwrap()
}

/// Affine points with multiplicities, as a scheme on the q = 2 curve.
fn scheme(entries: &[(usize, u32)]) -> ZeroDimScheme {
    let (c, pts, _) = q2();
    let mut seen = std::collections::BTreeMap::new();
    for &(i, m) in entries {
        seen.entry(i % pts.affine_count()).or_insert(m);
    }
    ZeroDimScheme::new(
        c,
        seen.into_iter().map(|(i, m)| (pts.point(i), m)).collect(),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn field_axioms(a in any::<u64>(), b in any::<u64>(), c in any::<u64>(), which in 0usize..4) {
        let (p, k) = [(2, 6), (3, 6), (2, 12), (7, 2)][which];
        let f = field(p, k);
        let (a, b, c) = (elem(&f, a), elem(&f, b), elem(&f, c));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
    }

    #[test]
    fn frobenius_is_a_ring_map(a in any::<u64>(), b in any::<u64>()) {
        let f = field(3, 6);
        let (a, b) = (elem(&f, a), elem(&f, b));
        let fr = |x| f.frobenius_power(x, 1);
        prop_assert_eq!(fr(f.add(a, b)), f.add(fr(a), fr(b)));
        prop_assert_eq!(fr(f.mul(a, b)), f.mul(fr(a), fr(b)));
        prop_assert_eq!(fr(a), f.pow_u(a, 3));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn condition_rank_ignores_orderings(
        entries in prop::collection::vec((0usize..224, 1u32..=3), 1..6),
        d in 1u32..=3,
        seed in any::<u64>(),
    ) {
        let f = &**q2().0.field();
        let z = scheme(&entries);
        let m = condition_matrix(f, &z, d).matrix;
        let base = m.rank(f);
        // shuffle rows and columns with a simple LCG
        let mut s = seed | 1;
        let mut perm = |n: usize| {
            let mut v: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                v.swap(i, (s >> 33) as usize % (i + 1));
            }
            v
        };
        let rows = perm(m.rows());
        let cols = perm(m.cols());
        let shuffled = Matrix::from_rows(m.cols(), rows.iter().map(|&r| m.row(r).to_vec()).collect()).select_columns(&cols);
        prop_assert_eq!(shuffled.rank(f), base);
        let rev: Vec<usize> = (0..z.len()).rev().collect();
        prop_assert_eq!(cohomology_defect(f, &z.restrict_to(&rev), d).h1, cohomology_defect(f, &z, d).h1);
    }

    #[test]
    fn h1_drops_on_subschemes(
        entries in prop::collection::vec((0usize..224, 1u32..=3), 1..6),
        lower in prop::collection::vec(0u32..=3, 6),
        d in 1u32..=3,
    ) {
        let f = &**q2().0.field();
        let z = scheme(&entries);
        let mults: Vec<u32> = z.entries().iter().zip(&lower).map(|(e, &l)| e.multiplicity.saturating_sub(l)).collect();
        let sub = z.with_multiplicities(&mults);
        prop_assert!(cohomology_defect(f, &z, d).h1 >= cohomology_defect(f, &sub, d).h1);
    }

    #[test]
    fn dual_words_are_orthogonal_to_the_code(s in subsequence((0..224).collect::<Vec<usize>>(), 1..12)) {
        let code = code_m2();
        let f = code.field();
        let ds = dual_support_space(code, &s);
        for w in &ds.words {
            let cols = code.columns(&ds.support);
            for r in 0..cols[0].len() {
                let row: Vec<Elem> = cols.iter().map(|c| c[r]).collect();
                prop_assert!(f.dot(&row, w).is_zero());
            }
        }
        let (dim, diff) = dual_support_h1_check(code, &s).unwrap();
        prop_assert_eq!(dim as i64, diff);
    }

    #[test]
    fn secant_subsets_are_weight_supports(line in 0usize..72) {
        // at m = 1 the three points of a secant are one minimal dependency
        let (_, pts, t) = q2();
        let code = one_point_dual(pts, 1).unwrap();
        let cols: Vec<usize> = t.secants()[line].points.iter().map(|&p| code.column_of(p).unwrap()).collect();
        prop_assert!(verify_weight_support(&code, &cols).unwrap().is_weight_support());
    }

    #[test]
    fn puncturing_removes_exactly_s(s in subsequence((0..224).collect::<Vec<usize>>(), 0..20)) {
        let (_, pts, t) = q2();
        let (code, _) = punctured_dual(pts, t, &s, 2).unwrap();
        prop_assert_eq!(code.len(), 224 - s.len());
        let full = code_m2();
        // surviving columns keep their values
        for (c, &p) in code.points().iter().enumerate().take(10) {
            prop_assert_eq!(code.column(c), full.column(full.column_of(p).unwrap()));
        }
    }
}

#[test]
fn empty_puncture_is_identity() {
    let (_, pts, t) = q2();
    let (code, _) = punctured_dual(pts, t, &[], 2).unwrap();
    assert_eq!(code.gen().unwrap(), code_m2().gen().unwrap());
}

#[test]
fn dimension_grows_with_m() {
    let (_, pts, _) = q2();
    let dims: Vec<usize> = (1..=6)
        .map(|m| code_dimension(&one_point_dual(pts, m).unwrap()))
        .collect();
    assert!(dims.windows(2).all(|w| w[0] <= w[1]), "{dims:?}");
}

#[test]
fn every_point_is_on_the_curve_once() {
    for q in [2, 3] {
        let c = CurveParams::new(q).unwrap();
        let pts = c.enumerate_points().unwrap();
        let mut seen = std::collections::HashSet::new();
        for i in 0..pts.len() {
            let p = pts.coords(i);
            assert!(c.is_on_curve(&p).unwrap());
            assert!(seen.insert(p.map(|x| x.encoded())));
        }
    }
}

#[test]
fn tangents_are_tangent() {
    let (c, pts, _) = q2();
    for i in 0..pts.len() {
        let p = pts.point(i);
        assert!(c.line_curve_multiplicity(&c.tangent_line(&p), &p).unwrap() >= 2);
    }
}
