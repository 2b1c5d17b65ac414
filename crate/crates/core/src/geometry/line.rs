use std::fmt;

use crate::gf::{Elem, Field};
use crate::linalg::Matrix;

use super::GeometryError;

/// A line of PG(3, F) stored as the reduced row echelon form of its two
/// defining linear forms (coefficients of X, Y, Z, T). Equal lines have equal
/// representations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    forms: [[Elem; 4]; 2],
}

impl fmt::Debug for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |r: &[Elem; 4]| {
            r.iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(
            f,
            "Line[{} | {}]",
            show(&self.forms[0]),
            show(&self.forms[1])
        )
    }
}

/// Normalizes a homogeneous vector so its first nonzero entry is 1.
pub fn normalize(f: &Field, v: [Elem; 4]) -> Option<[Elem; 4]> {
    let lead = v.iter().copied().find(|e| !e.is_zero())?;
    let inv = f.inv(lead).ok()?;
    Some(v.map(|e| f.mul(e, inv)))
}

impl Line {
    /// The line cut out by two linear forms.
    pub fn from_forms(f: &Field, a: [Elem; 4], b: [Elem; 4]) -> Result<Line, GeometryError> {
        let mut m = Matrix::from_rows(4, vec![a.to_vec(), b.to_vec()]);
        if m.rref(f).len() != 2 {
            return Err(GeometryError::DependentForms);
        }
        Ok(Line {
            forms: [row4(m.row(0)), row4(m.row(1))],
        })
    }

    /// The line spanned by two distinct projective points.
    pub fn through(f: &Field, p: &[Elem; 4], q: &[Elem; 4]) -> Result<Line, GeometryError> {
        let m = Matrix::from_rows(4, vec![p.to_vec(), q.to_vec()]);
        let ns = m.nullspace(f);
        if ns.len() != 2 {
            return Err(GeometryError::CoincidentPoints);
        }
        Line::from_forms(f, row4(&ns[0]), row4(&ns[1]))
    }

    pub fn forms(&self) -> &[[Elem; 4]; 2] {
        &self.forms
    }

    pub fn contains(&self, f: &Field, p: &[Elem; 4]) -> bool {
        self.forms.iter().all(|r| f.dot(r, p).is_zero())
    }

    /// Two points spanning the line (the nullspace basis of its forms).
    pub fn spanning_points(&self, f: &Field) -> [[Elem; 4]; 2] {
        let m = Matrix::from_rows(4, vec![self.forms[0].to_vec(), self.forms[1].to_vec()]);
        let ns = m.nullspace(f);
        [
            normalize(f, row4(&ns[0])).unwrap(),
            normalize(f, row4(&ns[1])).unwrap(),
        ]
    }

    /// Intersection with the plane T = 0, or `None` when the line lies in it.
    pub fn direction(&self, f: &Field) -> Option<[Elem; 4]> {
        let m = Matrix::from_rows(
            4,
            vec![
                self.forms[0].to_vec(),
                self.forms[1].to_vec(),
                vec![Elem::ZERO, Elem::ZERO, Elem::ZERO, Elem::ONE],
            ],
        );
        let ns = m.nullspace(f);
        if ns.len() != 1 {
            return None;
        }
        normalize(f, row4(&ns[0]))
    }

    /// True iff the two lines share no point.
    pub fn is_disjoint_from(&self, f: &Field, other: &Line) -> bool {
        let m = Matrix::from_rows(
            4,
            self.forms
                .iter()
                .chain(other.forms.iter())
                .map(|r| r.to_vec())
                .collect(),
        );
        m.rank(f) == 4
    }
}

pub(crate) fn row4(v: &[Elem]) -> [Elem; 4] {
    [v[0], v[1], v[2], v[3]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;

    #[test]
    fn z_axis() {
        let f = Field::new(2, 6).unwrap();
        let o = [Elem::ZERO, Elem::ZERO, Elem::ZERO, Elem::ONE];
        let z = [Elem::ZERO, Elem::ZERO, Elem::ONE, Elem::ZERO];
        let l = Line::through(&f, &o, &z).unwrap();
        assert_eq!(l, Line::through(&f, &z, &o).unwrap());
        let x_form = [Elem::ONE, Elem::ZERO, Elem::ZERO, Elem::ZERO];
        let y_form = [Elem::ZERO, Elem::ONE, Elem::ZERO, Elem::ZERO];
        assert_eq!(l, Line::from_forms(&f, y_form, x_form).unwrap());
        assert_eq!(l.direction(&f), Some(z));
        assert!(Line::through(&f, &o, &o).is_err());
    }

    #[test]
    fn parallel_lines_meet_at_infinity() {
        let f = Field::new(3, 2).unwrap();
        let z = [Elem::ZERO, Elem::ZERO, Elem::ONE, Elem::ZERO];
        let a = [Elem::ONE, Elem::ONE, Elem::ZERO, Elem::ONE];
        let b = [Elem::ONE, f.from_int(2), Elem::ZERO, Elem::ONE];
        let la = Line::through(&f, &a, &z).unwrap();
        let lb = Line::through(&f, &b, &z).unwrap();
        assert!(!la.is_disjoint_from(&f, &lb));
        assert_eq!(la.direction(&f), Some(z));
    }
}
