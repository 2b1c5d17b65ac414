//! Curvilinear zero-dimensional schemes on the curve and the conditions they
//! impose on forms of a given degree.

use std::fmt;

use crate::curve::{BranchExpansion, CurveParams, ProjectivePoint};
use crate::gf::{Elem, Field};
use crate::linalg::Matrix;
use crate::poly::{eval_monomials, monomial_count, restrict_monomials, Form};

use super::GeometryError;

/// One point of a scheme with its multiplicity along the curve branch.
#[derive(Clone)]
pub struct SchemePoint {
    pub point: ProjectivePoint,
    pub multiplicity: u32,
    pub jet: Option<BranchExpansion>,
}

impl fmt::Debug for SchemePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·{:?}", self.multiplicity, self.point)
    }
}

impl SchemePoint {
    /// Length of the intersection of this point's subscheme with `{form = 0}`,
    /// i.e. `min(multiplicity, vanishing order along the branch)`.
    pub fn contact(&self, f: &Field, form: &Form) -> u32 {
        let m = self.multiplicity;
        if m == 1 || self.jet.is_none() {
            return if form.eval(f, self.point.coords()).is_zero() {
                1
            } else {
                0
            };
        }
        let jet = self.jet.as_ref().unwrap();
        let v = jet.vanishing_order(f, form, m as usize);
        v.order.map_or(m, |o| (o as u32).min(m))
    }

    /// Common contact with several forms (the ideal they generate).
    pub fn contact_all(&self, f: &Field, forms: &[Form]) -> u32 {
        forms
            .iter()
            .map(|g| self.contact(f, g))
            .min()
            .unwrap_or(self.multiplicity)
    }

    /// Condition rows on degree-`d` forms: Taylor coefficients `t^0..t^(m-1)`
    /// of every monomial along the branch (or plain evaluation when `m = 1`).
    pub fn condition_rows(&self, f: &Field, d: u32) -> Vec<Vec<Elem>> {
        let m = self.multiplicity as usize;
        if m == 1 {
            return vec![eval_monomials(f, d, self.point.coords())];
        }
        let jet = self.jet.as_ref().expect("validated at construction");
        let restricted = restrict_monomials(f, d, &jet.coords(m));
        (0..m)
            .map(|k| restricted.iter().map(|s| s.coeff(k)).collect())
            .collect()
    }
}

/// A finite union of curvilinear points `Σ m_i P_i` on the curve.
#[derive(Clone, Default)]
pub struct ZeroDimScheme {
    entries: Vec<SchemePoint>,
}

impl fmt::Debug for ZeroDimScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.entries).finish()
    }
}

impl ZeroDimScheme {
    pub fn empty() -> ZeroDimScheme {
        ZeroDimScheme {
            entries: Vec::new(),
        }
    }

    /// Builds a scheme, computing branch jets for every multiplicity above one.
    pub fn new(
        params: &CurveParams,
        points: Vec<(ProjectivePoint, u32)>,
    ) -> Result<ZeroDimScheme, GeometryError> {
        let mut entries = Vec::with_capacity(points.len());
        for (point, m) in points {
            let jet = if m > 1 {
                Some(params.branch_jet(&point, m as usize + 1)?)
            } else {
                None
            };
            entries.push(SchemePoint {
                point,
                multiplicity: m,
                jet,
            });
        }
        ZeroDimScheme::from_parts(entries)
    }

    /// A reduced scheme (all multiplicities one).
    pub fn reduced(points: Vec<ProjectivePoint>) -> Result<ZeroDimScheme, GeometryError> {
        ZeroDimScheme::from_parts(
            points
                .into_iter()
                .map(|point| SchemePoint {
                    point,
                    multiplicity: 1,
                    jet: None,
                })
                .collect(),
        )
    }

    /// Validates prebuilt entries: distinct points, positive multiplicities,
    /// and a jet of sufficient length wherever the multiplicity exceeds one.
    pub fn from_parts(entries: Vec<SchemePoint>) -> Result<ZeroDimScheme, GeometryError> {
        for (i, e) in entries.iter().enumerate() {
            if e.multiplicity == 0 {
                return Err(GeometryError::ZeroMultiplicity);
            }
            if e.multiplicity > 1 {
                match &e.jet {
                    Some(j) if j.prec() > e.multiplicity as usize => {}
                    _ => return Err(GeometryError::MissingJet),
                }
            }
            if entries[..i].iter().any(|o| o.point == e.point) {
                return Err(GeometryError::DuplicatePoint);
            }
        }
        Ok(ZeroDimScheme { entries })
    }

    pub fn entries(&self) -> &[SchemePoint] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    pub fn is_reduced(&self) -> bool {
        self.entries.iter().all(|e| e.multiplicity == 1)
    }

    pub fn support(&self) -> Vec<ProjectivePoint> {
        self.entries.iter().map(|e| e.point.clone()).collect()
    }

    /// Union of schemes with disjoint supports.
    pub fn union(&self, other: &ZeroDimScheme) -> Result<ZeroDimScheme, GeometryError> {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        ZeroDimScheme::from_parts(entries)
    }

    /// The subscheme with the given multiplicities (each at most the current
    /// one; zero drops the point).
    pub fn with_multiplicities(&self, mults: &[u32]) -> ZeroDimScheme {
        assert_eq!(mults.len(), self.entries.len());
        let entries = self
            .entries
            .iter()
            .zip(mults)
            .filter(|(_, &m)| m > 0)
            .map(|(e, &m)| {
                assert!(
                    m <= e.multiplicity,
                    "subscheme multiplicity exceeds the scheme's"
                );
                SchemePoint {
                    point: e.point.clone(),
                    multiplicity: m,
                    jet: if m > 1 { e.jet.clone() } else { None },
                }
            })
            .collect();
        ZeroDimScheme { entries }
    }

    /// The subscheme on the given entry indices.
    pub fn restrict_to(&self, idx: &[usize]) -> ZeroDimScheme {
        ZeroDimScheme {
            entries: idx.iter().map(|&i| self.entries[i].clone()).collect(),
        }
    }

    /// Per-entry contact with the common zero locus of `forms`.
    pub fn contacts(&self, f: &Field, forms: &[Form]) -> Vec<u32> {
        self.entries
            .iter()
            .map(|e| e.contact_all(f, forms))
            .collect()
    }

    /// `deg(Z ∩ V(forms))`
    pub fn intersection_degree(&self, f: &Field, forms: &[Form]) -> u32 {
        self.contacts(f, forms).iter().sum()
    }

    /// `Z ∩ V(forms)` as a subscheme.
    pub fn intersection(&self, f: &Field, forms: &[Form]) -> ZeroDimScheme {
        self.with_multiplicities(&self.contacts(f, forms))
    }

    /// Dimension of the linear span of the scheme minus one (`-1` when empty).
    pub fn span_dimension(&self, f: &Field) -> i32 {
        condition_matrix(f, self, 1).matrix.rank(f) as i32 - 1
    }
}

/// Conditions imposed by a scheme on degree-`d` forms.
#[derive(Debug, Clone)]
pub struct ConditionMatrix {
    pub d: u32,
    pub matrix: Matrix,
    /// Scheme entry each row belongs to.
    pub row_owner: Vec<usize>,
}

impl ConditionMatrix {
    pub fn rank(&self, f: &Field) -> usize {
        self.matrix.rank(f)
    }
}

pub fn condition_matrix(f: &Field, z: &ZeroDimScheme, d: u32) -> ConditionMatrix {
    let cols = monomial_count(d);
    let mut rows = Vec::with_capacity(z.degree() as usize);
    let mut row_owner = Vec::with_capacity(rows.capacity());
    for (i, e) in z.entries().iter().enumerate() {
        for r in e.condition_rows(f, d) {
            rows.push(r);
            row_owner.push(i);
        }
    }
    ConditionMatrix {
        d,
        matrix: Matrix::from_rows(cols, rows),
        row_owner,
    }
}

/// `h⁰(I_Z(d))` and `h¹(I_Z(d))` from the rank of the condition matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Defect {
    pub h0: usize,
    pub h1: usize,
    pub rank: usize,
}

pub fn cohomology_defect(f: &Field, z: &ZeroDimScheme, d: u32) -> Defect {
    let rank = condition_matrix(f, z, d).rank(f);
    Defect {
        h0: monomial_count(d) - rank,
        h1: z.degree() as usize - rank,
        rank,
    }
}

/// Residual of `Z` with respect to the surface `{F = 0}`: each multiplicity
/// drops by the vanishing order of `F` along the branch.
pub fn residual_scheme(
    params: &CurveParams,
    z: &ZeroDimScheme,
    form: &Form,
) -> Result<ZeroDimScheme, GeometryError> {
    let f = &**params.field();
    let mults: Vec<u32> = z
        .entries()
        .iter()
        .map(|e| e.multiplicity - e.contact(f, form))
        .collect();
    Ok(z.with_multiplicities(&mults))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::PointSet;

    fn q2() -> (CurveParams, PointSet) {
        let c = CurveParams::new(2).unwrap();
        let pts = c.enumerate_points().unwrap();
        (c, pts)
    }

    #[test]
    fn single_point_rows() {
        let (c, pts) = q2();
        let f = &**c.field();
        let p = pts.point(17);
        let z = ZeroDimScheme::reduced(vec![p.clone()]).unwrap();
        let m = condition_matrix(f, &z, 1);
        assert_eq!(m.matrix.rows(), 1);
        assert_eq!(m.matrix.row(0), p.coords());
        for d in 0..5 {
            assert_eq!(cohomology_defect(f, &z, d).h1, 0);
        }
    }

    #[test]
    fn double_point_second_row_is_tangent_direction() {
        let (c, pts) = q2();
        let f = &**c.field();
        let p = pts.point(100);
        let z = ZeroDimScheme::new(&c, vec![(p.clone(), 2)]).unwrap();
        let m = condition_matrix(f, &z, 1);
        assert_eq!(m.matrix.rows(), 2);
        let jet = c.branch_jet(&p, 3).unwrap();
        let expect = [jet.x.coeff(1), jet.y.coeff(1), jet.z.coeff(1), Elem::ZERO];
        assert_eq!(m.matrix.row(1), &expect);
        // the tangent line contains the whole double point
        let t = c.tangent_line(&p);
        let forms = t.forms().map(Form::linear);
        assert_eq!(z.intersection_degree(f, &forms), 2);
    }

    #[test]
    fn residual_orders() {
        let (c, pts) = q2();
        let origin = pts.point(pts.index_of_affine(&[Elem::ZERO; 3]).unwrap());
        let z = ZeroDimScheme::new(&c, vec![(origin.clone(), 3)]).unwrap();
        // Z = t vanishes to order 1 at the origin (t = z is the parameter)
        let zf = Form::monomial([0, 0, 1, 0]);
        let res = residual_scheme(&c, &z, &zf).unwrap();
        assert_eq!(res.degree(), 2);
        // Y vanishes to order 3 there
        let yf = Form::monomial([0, 1, 0, 0]);
        assert!(residual_scheme(&c, &z, &yf).unwrap().is_empty());
        let tf = Form::monomial([0, 0, 0, 1]);
        assert_eq!(residual_scheme(&c, &z, &tf).unwrap().degree(), 3);
    }

    #[test]
    fn construction_errors() {
        let (c, pts) = q2();
        let p = pts.point(3);
        assert_eq!(
            ZeroDimScheme::reduced(vec![p.clone(), p.clone()]).unwrap_err(),
            GeometryError::DuplicatePoint
        );
        let bad = SchemePoint {
            point: p.clone(),
            multiplicity: 2,
            jet: None,
        };
        assert_eq!(
            ZeroDimScheme::from_parts(vec![bad]).unwrap_err(),
            GeometryError::MissingJet
        );
        assert!(ZeroDimScheme::new(&c, vec![(c.infinity(), 2)]).is_err());
    }
}
