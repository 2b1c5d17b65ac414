//! Dimension of the space of degree-t forms restricted to the curve, compared
//! with the piecewise formula stated for a complete intersection of degrees
//! a = q+1 and b = q².

use serde::Serialize;

use crate::curve::{CurveParams, PointSet};
use crate::gf::Elem;
use crate::linalg::Matrix;
use crate::poly::{binomial, eval_monomials, monomial_count};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SectionDimension {
    pub t: u32,
    pub formula_value: i128,
    pub computed_rank: usize,
    pub matches: bool,
}

/// The formula, read literally: `C(t+3,3)` below `a`, minus `C(t-a+3,3)` below
/// `b`, and from `b` on `+ C(t-b,3) - ε` with `ε = C(t-b-a,3)` once `t ≥ a+b`.
pub fn section_formula(params: &CurveParams, t: u32) -> i128 {
    let (a, b, t) = (params.a() as i64, params.b() as i64, t as i64);
    let c = |n: i64| binomial(n, 3) as i128;
    if t < a {
        c(t + 3)
    } else if t < b {
        c(t + 3) - c(t - a + 3)
    } else {
        let eps = if t < a + b { 0 } else { c(t - b - a) };
        c(t + 3) - c(t - a + 3) + c(t - b) - eps
    }
}

/// Rank of the evaluation of all degree-`t` monomials at the curve points.
///
/// At `P∞ = (1:0:0:0)` only `X^t` survives, so the rank is one more than the
/// rank of the other monomials on the affine points. A form not vanishing on
/// the curve has at most `t·(q³+1)` zeros, so the first `t·(q³+1) + 1` affine
/// points already separate forms.
pub fn curve_section_dimension(params: &CurveParams, pts: &PointSet, t: u32) -> SectionDimension {
    let f = &**params.field();
    let q = params.q() as usize;
    let need = (t as usize * (q * q * q + 1) + 1).min(pts.affine_count());
    // X^t is the first monomial
    let cols = monomial_count(t);
    let rows: Vec<Vec<Elem>> = pts.affine_points()[..need]
        .iter()
        .map(|&[x, y, z]| eval_monomials(f, t, &[x, y, z, Elem::ONE])[1..].to_vec())
        .collect();
    let affine_rank = if cols > 1 {
        Matrix::from_rows(cols - 1, rows).rank(f)
    } else {
        0
    };
    let computed_rank = affine_rank + 1;
    let formula_value = section_formula(params, t);
    SectionDimension {
        t,
        formula_value,
        computed_rank,
        matches: formula_value == computed_rank as i128,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_values() {
        let c = CurveParams::new(2).unwrap();
        assert_eq!(section_formula(&c, 1), 4);
        assert_eq!(section_formula(&c, 3), 19);
        // t = b = 4: 35 - 4 + 0
        assert_eq!(section_formula(&c, 4), 31);
    }

    #[test]
    fn shortcut_matches_full_rank() {
        let c = CurveParams::new(2).unwrap();
        let f = &**c.field();
        let pts = c.enumerate_points().unwrap();
        for t in 0..=3 {
            let rows: Vec<Vec<Elem>> = (0..pts.len())
                .map(|i| eval_monomials(f, t, &pts.coords(i)))
                .collect();
            let full = Matrix::from_rows(monomial_count(t), rows).rank(f);
            assert_eq!(
                curve_section_dimension(&c, &pts, t).computed_rank,
                full,
                "t = {t}"
            );
        }
        assert_eq!(curve_section_dimension(&c, &pts, 1).computed_rank, 4);
    }
}
