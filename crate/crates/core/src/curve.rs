//! The GK curve over F_{q^6}: points, tangents, branch jets and intersection
//! multiplicities.
//!
//! Affine model: `Z^(q²-q+1) = Y^(q²) - Y`, `Y^(q+1) = X^q + X`. The single
//! point at infinity is `P∞ = (1:0:0:0)`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::line::{normalize, Line};
use crate::gf::{prime_power, Elem, Field, FieldError};
use crate::poly::{Form, Series};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u32),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("the zero tuple is not a projective point")]
    ZeroTuple,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("branch expansions at the point at infinity are not supported")]
    JetAtInfinity,
    #[error("vanishing order at the point at infinity is only defined here for forms with a unique minimal-order term")]
    UnsupportedAtInfinity,
    #[error("point does not lie on the line")]
    NotOnLine,
    #[error("enumeration produced {found} points, expected {expected}")]
    CountMismatch { found: usize, expected: u64 },
}

/// Parameters of the GK curve for a given `q`.
#[derive(Debug, Clone)]
pub struct CurveParams {
    q: u32,
    p: u32,
    e: u32,
    field: Arc<Field>,
}

impl CurveParams {
    pub fn new(q: u32) -> Result<CurveParams, CurveError> {
        let (p, e) = prime_power(q).ok_or(CurveError::NotPrimePower(q))?;
        let field = Field::new(p, 6 * e)?;
        Ok(CurveParams { q, p, e, field })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// `q = p^e`
    pub fn e(&self) -> u32 {
        self.e
    }

    /// F_{q^6}
    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    /// Degree of the first surface, `q + 1`.
    pub fn a(&self) -> u32 {
        self.q + 1
    }

    /// Degree of the second surface, `q²`.
    pub fn b(&self) -> u32 {
        self.q * self.q
    }

    /// `q² - q + 1`, the exponent of Z and the maximal secant order.
    pub fn secant_order(&self) -> u32 {
        self.q * self.q - self.q + 1
    }

    pub fn genus(&self) -> u64 {
        let q = self.q as u64;
        (q.pow(5) - 2 * q.pow(3) + q * q) / 2
    }

    /// `q^8 - q^6 + q^5 + 1`
    pub fn expected_point_count(&self) -> u64 {
        let q = self.q as u64;
        q.pow(8) - q.pow(6) + q.pow(5) + 1
    }

    /// `q^3 + 1`, the F_{q²}-rational points including P∞.
    pub fn expected_subfield_count(&self) -> u64 {
        (self.q as u64).pow(3) + 1
    }

    /// Subfield degree (over the prime field) of F_{q²}.
    pub fn subfield_degree(&self) -> u32 {
        2 * self.e
    }

    /// `x ↦ x^q`
    pub fn frob_q(&self, x: Elem) -> Elem {
        self.field.frobenius_power(x, self.e)
    }

    /// `x ↦ x^(q²)`
    pub fn frob_q2(&self, x: Elem) -> Elem {
        self.field.frobenius_power(x, 2 * self.e)
    }

    pub fn in_fq2(&self, x: Elem) -> bool {
        self.frob_q2(x) == x
    }

    /// Residuals of both affine equations at `(x, y, z)`.
    pub fn affine_residuals(&self, x: Elem, y: Elem, z: Elem) -> (Elem, Elem) {
        let f = &*self.field;
        let r1 = f.sub(
            f.pow_u(z, self.secant_order() as u64),
            f.sub(self.frob_q2(y), y),
        );
        let r2 = f.sub(f.pow_u(y, self.q as u64 + 1), f.add(self.frob_q(x), x));
        (r1, r2)
    }

    /// Both homogeneous forms at a 4-tuple.
    pub fn homogeneous_residuals(&self, c: &[Elem; 4]) -> (Elem, Elem) {
        let f = &*self.field;
        let q = self.q as u64;
        let [x, y, z, t] = *c;
        let lhs1 = f.mul(f.pow_u(z, self.secant_order() as u64), f.pow_u(t, q - 1));
        let rhs1 = f.sub(self.frob_q2(y), f.mul(y, f.pow_u(t, q * q - 1)));
        let lhs2 = f.pow_u(y, q + 1);
        let rhs2 = f.add(f.mul(self.frob_q(x), t), f.mul(x, self.frob_q(t)));
        (f.sub(lhs1, rhs1), f.sub(lhs2, rhs2))
    }

    pub fn is_on_curve(&self, c: &[Elem; 4]) -> Result<bool, CurveError> {
        if c.iter().all(|e| e.is_zero()) {
            return Err(CurveError::ZeroTuple);
        }
        let (a, b) = self.homogeneous_residuals(c);
        Ok(a.is_zero() && b.is_zero())
    }

    pub fn infinity(&self) -> ProjectivePoint {
        ProjectivePoint {
            coords: [Elem::ONE, Elem::ZERO, Elem::ZERO, Elem::ZERO],
            class: PointClass::Infinity,
        }
    }

    /// Builds a curve point from affine coordinates, checking the equations.
    pub fn affine_point(&self, x: Elem, y: Elem, z: Elem) -> Result<ProjectivePoint, CurveError> {
        let (a, b) = self.affine_residuals(x, y, z);
        if !a.is_zero() || !b.is_zero() {
            return Err(CurveError::NotOnCurve);
        }
        Ok(self.affine_point_unchecked(x, y, z))
    }

    pub(crate) fn affine_point_unchecked(&self, x: Elem, y: Elem, z: Elem) -> ProjectivePoint {
        let coords = normalize(&self.field, [x, y, z, Elem::ONE]).unwrap();
        let class = if z.is_zero() && self.in_fq2(y) && self.in_fq2(x) {
            PointClass::Subfield
        } else {
            PointClass::Generic
        };
        ProjectivePoint { coords, class }
    }

    /// A curve point from a homogeneous 4-tuple.
    pub fn point(&self, c: [Elem; 4]) -> Result<ProjectivePoint, CurveError> {
        if !self.is_on_curve(&c)? {
            return Err(CurveError::NotOnCurve);
        }
        if c[3].is_zero() {
            // the only point of the curve on T = 0
            return Ok(self.infinity());
        }
        let f = &*self.field;
        let inv = f.inv(c[3])?;
        Ok(self.affine_point_unchecked(f.mul(c[0], inv), f.mul(c[1], inv), f.mul(c[2], inv)))
    }

    pub fn classify_point(&self, p: &ProjectivePoint) -> PointClass {
        p.class
    }

    /// Tangent line at a curve point.
    pub fn tangent_line(&self, p: &ProjectivePoint) -> Line {
        let f = &*self.field;
        let Some([x0, y0, z0]) = p.affine(f) else {
            let y = [Elem::ZERO, Elem::ONE, Elem::ZERO, Elem::ZERO];
            let t = [Elem::ZERO, Elem::ZERO, Elem::ZERO, Elem::ONE];
            return Line::from_forms(f, y, t).unwrap();
        };
        if z0.is_zero() {
            // X = x0 T, Y = y0 T
            let a = [Elem::ONE, Elem::ZERO, Elem::ZERO, f.neg(x0)];
            let b = [Elem::ZERO, Elem::ONE, Elem::ZERO, f.neg(y0)];
            return Line::from_forms(f, a, b).unwrap();
        }
        let n = self.secant_order() as u64;
        // (Y - y0) + z0^(q²-q) (Z - z0) = 0
        let c = f.pow_u(z0, n - 1);
        let a = [Elem::ZERO, Elem::ONE, c, f.neg(f.add(y0, f.mul(c, z0)))];
        // -(X - x0) + y0^q (Y - y0) = 0
        let yq = self.frob_q(y0);
        let b = [f.neg(Elem::ONE), yq, Elem::ZERO, f.sub(x0, f.mul(yq, y0))];
        Line::from_forms(f, a, b).unwrap()
    }

    /// Local branch expansion at an affine point to `t^order` inclusive.
    pub fn branch_jet(
        &self,
        p: &ProjectivePoint,
        order: usize,
    ) -> Result<BranchExpansion, CurveError> {
        let f = &*self.field;
        let [x0, y0, z0] = p.affine(f).ok_or(CurveError::JetAtInfinity)?;
        let prec = order.max(1) + 1;
        let q = self.q as u64;
        let n = self.secant_order() as u64;
        let (parameter, x, y, z);
        if z0.is_zero() {
            parameter = BranchParameter::Z;
            z = Series::shifted_parameter(Elem::ZERO, prec);
            let zn = z.pow(f, n);
            // y = y^(q²) - z^n
            let mut ys = Series::constant(y0, prec);
            loop {
                let next = ys.frobenius(f, 2 * self.e).sub(f, &zn);
                if next == ys {
                    break;
                }
                ys = next;
            }
            y = ys;
        } else {
            parameter = BranchParameter::Y;
            y = Series::shifted_parameter(y0, prec);
            // Newton on z^n = y^(q²) - y; derivative n z^(n-1) = z^(n-1) since n ≡ 1 mod p
            let w = y.frobenius(f, 2 * self.e).sub(f, &y);
            let mut zs = Series::constant(z0, prec);
            loop {
                let zn1 = zs.pow(f, n - 1);
                let resid = zn1.mul(f, &zs).sub(f, &w);
                if resid.order().is_none() {
                    break;
                }
                let step = resid.mul(f, &zn1.inverse(f).expect("z0 is a unit"));
                zs = zs.sub(f, &step);
            }
            z = zs;
        }
        // x = y^(q+1) - x^q
        let yq1 = y.pow(f, q + 1);
        let mut xs = Series::constant(x0, prec);
        loop {
            let next = yq1.sub(f, &xs.frobenius(f, self.e));
            if next == xs {
                break;
            }
            xs = next;
        }
        x = xs;
        Ok(BranchExpansion {
            center: p.clone(),
            parameter,
            x,
            y,
            z,
        })
    }

    /// Order of vanishing of `form` along the branch at `p`, saturating at `cap`.
    pub fn vanishing_order(
        &self,
        form: &Form,
        p: &ProjectivePoint,
        cap: usize,
    ) -> Result<VanishingOrder, CurveError> {
        if form.is_zero() {
            return Ok(VanishingOrder {
                order: None,
                cap,
                zero_form: true,
            });
        }
        if p.is_infinity() {
            return self.order_at_infinity(form).map(|o| VanishingOrder {
                order: (o < cap).then_some(o),
                cap,
                zero_form: false,
            });
        }
        let jet = self.branch_jet(p, cap.max(1))?;
        Ok(jet.vanishing_order(&self.field, form, cap))
    }

    /// At P∞ the chart X = 1 has local parameter Z/X, with Y/X of order
    /// q²-q+1 and T/X of order q³+1 (pole orders q³, q³-q²+q, q³+1 of z, y, x).
    /// A form's order is that of its lowest term when that term is unique.
    fn order_at_infinity(&self, form: &Form) -> Result<usize, CurveError> {
        let n = self.secant_order() as usize;
        let tq = (self.q as usize).pow(3) + 1;
        let mut best: Option<(usize, usize)> = None; // (order, multiplicity of that order)
        for (m, c) in crate::poly::monomial_basis(form.degree())
            .iter()
            .zip(form.coeffs())
        {
            if c.is_zero() {
                continue;
            }
            let o = m[1] as usize * n + m[2] as usize + m[3] as usize * tq;
            best = match best {
                None => Some((o, 1)),
                Some((b, k)) => match o.cmp(&b) {
                    Ordering::Less => Some((o, 1)),
                    Ordering::Equal => Some((b, k + 1)),
                    Ordering::Greater => Some((b, k)),
                },
            };
        }
        match best {
            Some((o, 1)) => Ok(o),
            _ => Err(CurveError::UnsupportedAtInfinity),
        }
    }

    /// Intersection multiplicity of a line with the curve at `p`: the length of
    /// the intersection scheme, i.e. the smaller branch order of the two forms.
    pub fn line_curve_multiplicity(
        &self,
        line: &Line,
        p: &ProjectivePoint,
    ) -> Result<u32, CurveError> {
        let f = &*self.field;
        if !line.contains(f, &p.coords) {
            return Err(CurveError::NotOnLine);
        }
        let forms = line.forms().map(Form::linear);
        if p.is_infinity() {
            let a = self.order_at_infinity(&forms[0])?;
            let b = self.order_at_infinity(&forms[1])?;
            return Ok(a.min(b) as u32);
        }
        let mut cap = self.secant_order() as usize + 2;
        loop {
            let jet = self.branch_jet(p, cap)?;
            let a = jet.vanishing_order(f, &forms[0], cap);
            let b = jet.vanishing_order(f, &forms[1], cap);
            match (a.order, b.order) {
                (Some(x), Some(y)) => return Ok(x.min(y) as u32),
                (Some(x), None) | (None, Some(x)) => return Ok(x as u32),
                (None, None) => cap *= 2,
            }
        }
    }

    /// Root multiplicity at `p` of each defining equation restricted to the
    /// line, parametrized as `p + s·d` for a second point `d` of the line.
    /// `None` means the equation vanishes identically on the line.
    pub fn line_equation_orders(
        &self,
        line: &Line,
        p: &ProjectivePoint,
    ) -> Result<(Option<u32>, Option<u32>), CurveError> {
        let f = &*self.field;
        if !line.contains(f, &p.coords) {
            return Err(CurveError::NotOnLine);
        }
        let base = if p.is_infinity() {
            p.coords
        } else {
            let [x, y, z] = p.affine(f).unwrap();
            [x, y, z, Elem::ONE]
        };
        let [s0, s1] = line.spanning_points(f);
        // second point: whichever spanning point is not proportional to base
        let other = if Line::through(f, &base, &s0).is_ok() {
            s0
        } else {
            s1
        };
        let q = self.q as u64;
        let prec = (q * q) as usize + 2;
        let coords: Vec<Series> = (0..4)
            .map(|i| Series::from_coeffs(vec![base[i], other[i]], prec))
            .collect();
        let [x, y, z, t] = [&coords[0], &coords[1], &coords[2], &coords[3]];
        let n = self.secant_order() as u64;
        let e1 = z
            .pow(f, n)
            .mul(f, &t.pow(f, q - 1))
            .sub(f, &y.frobenius(f, 2 * self.e))
            .add(f, &y.mul(f, &t.pow(f, q * q - 1)));
        let e2 = y
            .pow(f, q + 1)
            .sub(f, &x.frobenius(f, self.e).mul(f, t))
            .sub(f, &x.mul(f, &t.frobenius(f, self.e)));
        Ok((e1.order().map(|o| o as u32), e2.order().map(|o| o as u32)))
    }

    /// Enumerates every F_{q^6}-point in canonical order (affine points by
    /// encoded `(x, y, z)`, then P∞).
    pub fn enumerate_points(&self) -> Result<PointSet, CurveError> {
        let f = &*self.field;
        let order = f.order() as usize;
        let n = self.secant_order() as u64;

        // x^q + x = c: one particular solution per c plus the kernel
        let mut particular = vec![u32::MAX; order];
        let mut kernel = Vec::new();
        // z^n = w: one root per w plus the n-th roots of unity
        let mut root = vec![u32::MAX; order];
        let mut unity = Vec::new();
        for v in f.elements() {
            let c = f.add(self.frob_q(v), v);
            if particular[c.encoded() as usize] == u32::MAX {
                particular[c.encoded() as usize] = v.encoded();
            }
            if c.is_zero() {
                kernel.push(v);
            }
            let w = f.pow_u(v, n);
            if root[w.encoded() as usize] == u32::MAX {
                root[w.encoded() as usize] = v.encoded();
            }
            if w == Elem::ONE {
                unity.push(v);
            }
        }

        let mut affine: Vec<[Elem; 3]> = f
            .elements()
            .collect::<Vec<_>>()
            .into_par_iter()
            .flat_map_iter(|y| {
                let c = f.pow_u(y, self.q as u64 + 1);
                let px = particular[c.encoded() as usize];
                let xs: Vec<Elem> = if px == u32::MAX {
                    Vec::new()
                } else {
                    kernel
                        .iter()
                        .map(|&k| f.add(Elem::from_raw(px), k))
                        .collect()
                };
                let w = f.sub(self.frob_q2(y), y);
                let zs: Vec<Elem> = if w.is_zero() {
                    vec![Elem::ZERO]
                } else {
                    match root[w.encoded() as usize] {
                        u32::MAX => Vec::new(),
                        r => unity.iter().map(|&u| f.mul(Elem::from_raw(r), u)).collect(),
                    }
                };
                xs.into_iter()
                    .flat_map(move |x| zs.clone().into_iter().map(move |z| [x, y, z]))
                    .collect::<Vec<_>>()
            })
            .collect();
        affine.par_sort_unstable();
        let found = affine.len() + 1;
        if found as u64 != self.expected_point_count() {
            return Err(CurveError::CountMismatch {
                found,
                expected: self.expected_point_count(),
            });
        }
        Ok(PointSet {
            params: self.clone(),
            affine,
        })
    }
}

/// Whether a point is P∞, F_{q²}-rational (z = 0), or neither.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointClass {
    Infinity,
    Subfield,
    Generic,
}

/// A point of the curve with coordinates normalized so the first nonzero one is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    coords: [Elem; 4],
    class: PointClass,
}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coords;
        write!(f, "({}:{}:{}:{})", c[0], c[1], c[2], c[3])
    }
}

impl ProjectivePoint {
    pub fn coords(&self) -> &[Elem; 4] {
        &self.coords
    }

    pub fn class(&self) -> PointClass {
        self.class
    }

    pub fn is_infinity(&self) -> bool {
        self.class == PointClass::Infinity
    }

    /// `(x, y, z)` in the chart T = 1, `None` for P∞.
    pub fn affine(&self, f: &Field) -> Option<[Elem; 3]> {
        if self.coords[3].is_zero() {
            return None;
        }
        let inv = f.inv(self.coords[3]).ok()?;
        Some([
            f.mul(self.coords[0], inv),
            f.mul(self.coords[1], inv),
            f.mul(self.coords[2], inv),
        ])
    }

    /// Homogeneous representative with T = 1 (affine points only).
    pub fn affine_coords(&self, f: &Field) -> Option<[Elem; 4]> {
        self.affine(f).map(|[x, y, z]| [x, y, z, Elem::ONE])
    }
}

/// Which affine coordinate serves as the local parameter of a branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BranchParameter {
    /// `t = y - y0` (points with z ≠ 0)
    Y,
    /// `t = z` (points with z = 0)
    Z,
}

/// Truncated parametrization `(x(t), y(t), z(t))` of the curve near an affine point.
#[derive(Debug, Clone)]
pub struct BranchExpansion {
    pub center: ProjectivePoint,
    pub parameter: BranchParameter,
    pub x: Series,
    pub y: Series,
    pub z: Series,
}

impl BranchExpansion {
    /// Series are exact modulo `t^prec`.
    pub fn prec(&self) -> usize {
        self.x.prec()
    }

    /// Homogeneous coordinate series `(x, y, z, 1)`, truncated to `prec`.
    pub fn coords(&self, prec: usize) -> [Series; 4] {
        [
            self.x.truncate(prec),
            self.y.truncate(prec),
            self.z.truncate(prec),
            Series::constant(Elem::ONE, prec),
        ]
    }

    pub fn vanishing_order(&self, f: &Field, form: &Form, cap: usize) -> VanishingOrder {
        if form.is_zero() {
            return VanishingOrder {
                order: None,
                cap,
                zero_form: true,
            };
        }
        let prec = cap.min(self.prec());
        let s = form.restrict(f, &self.coords(prec));
        VanishingOrder {
            order: s.order(),
            cap: prec,
            zero_form: false,
        }
    }

    /// Residuals of both affine equations along the branch.
    pub fn residuals(&self, params: &CurveParams) -> (Series, Series) {
        let f = &**params.field();
        let q = params.q() as u64;
        let r1 = self
            .z
            .pow(f, params.secant_order() as u64)
            .sub(f, &self.y.frobenius(f, 2 * params.e()))
            .add(f, &self.y);
        let r2 = self
            .y
            .pow(f, q + 1)
            .sub(f, &self.x.frobenius(f, params.e()))
            .sub(f, &self.x);
        (r1, r2)
    }
}

/// Vanishing order of a form along a branch; `order == None` means "at least `cap`".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VanishingOrder {
    pub order: Option<usize>,
    pub cap: usize,
    pub zero_form: bool,
}

impl VanishingOrder {
    /// The order, or `cap` when saturated.
    pub fn at_least(&self) -> usize {
        self.order.unwrap_or(self.cap)
    }

    pub fn is_saturated(&self) -> bool {
        self.order.is_none()
    }
}

/// All F_{q^6}-points of the curve in canonical order; P∞ has the last index.
#[derive(Clone)]
pub struct PointSet {
    params: CurveParams,
    affine: Vec<[Elem; 3]>,
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointSet(q={}, {} points)", self.params.q, self.len())
    }
}

impl PointSet {
    pub fn params(&self) -> &CurveParams {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.affine.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn affine_count(&self) -> usize {
        self.affine.len()
    }

    pub fn infinity_index(&self) -> usize {
        self.affine.len()
    }

    /// Affine coordinates of point `i`, `None` for P∞.
    pub fn affine(&self, i: usize) -> Option<[Elem; 3]> {
        self.affine.get(i).copied()
    }

    pub fn affine_points(&self) -> &[[Elem; 3]] {
        &self.affine
    }

    pub fn point(&self, i: usize) -> ProjectivePoint {
        match self.affine.get(i) {
            Some(&[x, y, z]) => self.params.affine_point_unchecked(x, y, z),
            None => self.params.infinity(),
        }
    }

    pub fn points(&self) -> impl Iterator<Item = ProjectivePoint> + '_ {
        (0..self.len()).map(|i| self.point(i))
    }

    pub fn index_of_affine(&self, xyz: &[Elem; 3]) -> Option<usize> {
        self.affine.binary_search(xyz).ok()
    }

    pub fn index_of(&self, p: &ProjectivePoint) -> Option<usize> {
        match p.affine(self.params.field()) {
            Some(xyz) => self.index_of_affine(&xyz),
            None => Some(self.infinity_index()),
        }
    }

    pub fn class(&self, i: usize) -> PointClass {
        match self.affine.get(i) {
            None => PointClass::Infinity,
            Some(&[x, y, z]) => {
                if z.is_zero() && self.params.in_fq2(y) && self.params.in_fq2(x) {
                    PointClass::Subfield
                } else {
                    PointClass::Generic
                }
            }
        }
    }

    pub fn subfield_count(&self) -> usize {
        (0..self.len())
            .filter(|&i| self.class(i) != PointClass::Generic)
            .count()
    }

    /// Homogeneous coordinates with the first nonzero entry equal to 1.
    pub fn coords(&self, i: usize) -> [Elem; 4] {
        *self.point(i).coords()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(f: &Field, n: u64) -> Elem {
        f.decode(n).unwrap()
    }

    #[test]
    fn params_for_q2() {
        let c = CurveParams::new(2).unwrap();
        assert_eq!((c.a(), c.b()), (3, 4));
        assert_eq!(c.genus(), 10);
        assert_eq!(c.expected_point_count(), 225);
        // maximality over F_{q^6}: Q + 1 + 2 g sqrt(Q), Q = 64
        assert_eq!(64 + 1 + 2 * c.genus() * 8, c.expected_point_count());
        assert!(CurveParams::new(6).is_err());
    }

    #[test]
    fn membership() {
        let c = CurveParams::new(2).unwrap();
        let f = c.field();
        let one = Elem::ONE;
        let z = Elem::ZERO;
        assert!(c.is_on_curve(&[one, z, z, z]).unwrap());
        assert!(c.is_on_curve(&[z, z, z, one]).unwrap());
        assert!(!c.is_on_curve(&[one, one, one, one]).unwrap());
        assert_eq!(c.is_on_curve(&[z; 4]), Err(CurveError::ZeroTuple));
        // direct substitution: Y^3 - X^2 T - X T^2 = 1 - 1 - 1 = 1
        assert_eq!(c.homogeneous_residuals(&[one, one, one, one]).1, one);
        let _ = f;
    }

    #[test]
    fn q2_enumeration() {
        let c = CurveParams::new(2).unwrap();
        let pts = c.enumerate_points().unwrap();
        assert_eq!(pts.len(), 225);
        assert_eq!(pts.subfield_count(), 9);
        let origin = [Elem::ZERO; 3];
        assert!(pts.index_of_affine(&origin).is_some());
        for p in pts.points() {
            assert!(c.is_on_curve(p.coords()).unwrap());
        }
        let mut seen: Vec<_> = pts.points().map(|p| *p.coords()).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 225);
        assert!(pts.point(pts.infinity_index()).is_infinity());
        assert_eq!(
            pts.class(pts.index_of_affine(&origin).unwrap()),
            PointClass::Subfield
        );
    }

    #[test]
    fn jet_at_origin_q2() {
        let c = CurveParams::new(2).unwrap();
        let f = c.field();
        let o = c.affine_point(Elem::ZERO, Elem::ZERO, Elem::ZERO).unwrap();
        let jet = c.branch_jet(&o, 11).unwrap();
        assert_eq!(jet.parameter, BranchParameter::Z);
        let mut y = [Elem::ZERO; 12];
        y[3] = Elem::ONE;
        let mut x = [Elem::ZERO; 12];
        x[9] = Elem::ONE;
        assert_eq!(jet.y.coeffs(), &y[..]);
        assert_eq!(jet.x.coeffs(), &x[..]);
        let (r1, r2) = jet.residuals(&c);
        assert!(r1.order().is_none() && r2.order().is_none());
        let order = |m| c.vanishing_order(&Form::monomial(m), &o, 20).unwrap().order;
        assert_eq!(order([0, 1, 0, 0]), Some(3));
        assert_eq!(order([1, 0, 0, 0]), Some(9));
        assert_eq!(order([0, 0, 0, 1]), Some(0));
        let _ = e(f, 0);
    }

    #[test]
    fn jets_satisfy_equations() {
        for q in [2, 3] {
            let c = CurveParams::new(q).unwrap();
            let pts = c.enumerate_points().unwrap();
            let step = pts.affine_count() / 100;
            for i in (0..pts.affine_count()).step_by(step.max(1)) {
                let p = pts.point(i);
                let jet = c.branch_jet(&p, 12).unwrap();
                let (r1, r2) = jet.residuals(&c);
                assert!(r1.order().is_none(), "q={q} point {i}");
                assert!(r2.order().is_none(), "q={q} point {i}");
                let xyz = p.affine(c.field()).unwrap();
                assert_eq!([jet.x.coeff(0), jet.y.coeff(0), jet.z.coeff(0)], xyz);
            }
            assert_eq!(
                c.branch_jet(&c.infinity(), 3).unwrap_err(),
                CurveError::JetAtInfinity
            );
        }
    }

    #[test]
    fn tangent_multiplicities_at_special_points() {
        let c = CurveParams::new(2).unwrap();
        let f = c.field();
        let inf = c.infinity();
        let t = c.tangent_line(&inf);
        let y = [Elem::ZERO, Elem::ONE, Elem::ZERO, Elem::ZERO];
        let tt = [Elem::ZERO, Elem::ZERO, Elem::ZERO, Elem::ONE];
        assert_eq!(t, Line::from_forms(f, y, tt).unwrap());
        assert_eq!(c.line_curve_multiplicity(&t, &inf).unwrap(), 3);
        // the tangent at P∞ lies on both surfaces
        assert_eq!(c.line_equation_orders(&t, &inf).unwrap(), (None, None));

        let o = c.affine_point(Elem::ZERO, Elem::ZERO, Elem::ZERO).unwrap();
        let to = c.tangent_line(&o);
        let x = [Elem::ONE, Elem::ZERO, Elem::ZERO, Elem::ZERO];
        assert_eq!(to, Line::from_forms(f, x, y).unwrap());
        assert_eq!(c.line_curve_multiplicity(&to, &o).unwrap(), 3);
        // transverse line through the origin: X = 0, Z = 0 (the Y axis)
        let z = [Elem::ZERO, Elem::ZERO, Elem::ONE, Elem::ZERO];
        let yaxis = Line::from_forms(f, x, z).unwrap();
        assert_eq!(c.line_curve_multiplicity(&yaxis, &o).unwrap(), 1);
    }

    #[test]
    fn multiplicity_invariant_under_rescaling() {
        let c = CurveParams::new(3).unwrap();
        let f = c.field();
        let pts = c.enumerate_points().unwrap();
        for i in (0..pts.affine_count()).step_by(397) {
            let p = pts.point(i);
            let l = c.tangent_line(&p);
            let k = f.decode(5).unwrap();
            let [a, b] = *l.forms();
            let scaled = Line::from_forms(f, a.map(|v| f.mul(v, k)), f_add(f, b, a)).unwrap();
            assert_eq!(
                c.line_curve_multiplicity(&l, &p).unwrap(),
                c.line_curve_multiplicity(&scaled, &p).unwrap()
            );
            let tangent_passes = l.contains(f, p.coords());
            assert!(tangent_passes);
        }
    }

    fn f_add(f: &Field, a: [Elem; 4], b: [Elem; 4]) -> [Elem; 4] {
        [
            f.add(a[0], b[0]),
            f.add(a[1], b[1]),
            f.add(a[2], b[2]),
            f.add(a[3], b[3]),
        ]
    }
}
