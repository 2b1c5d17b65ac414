//! Plane conics in PG(3, F), stored as a plane together with a quadric that
//! does not involve the plane's pivot variable.

use crate::gf::{Elem, Field};
use crate::linalg::Matrix;
use crate::poly::{monomial_basis, Form};

use super::line::{normalize, Line};
use super::scheme::{condition_matrix, ZeroDimScheme};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conic {
    plane: [Elem; 4],
    quadric: Form,
    reducible: bool,
    reduced: bool,
}

/// Index of the plane coordinate eliminated on the plane.
fn pivot(plane: &[Elem; 4]) -> usize {
    plane
        .iter()
        .position(|e| !e.is_zero())
        .expect("nonzero plane")
}

/// Degree-2 monomial indices not involving `v`.
fn kept_monomials(v: usize) -> Vec<usize> {
    monomial_basis(2)
        .iter()
        .enumerate()
        .filter(|(_, m)| m[v] == 0)
        .map(|(i, _)| i)
        .collect()
}

impl Conic {
    /// The conic cut on `plane` by `quadric`; `None` if it contains the whole plane.
    pub fn new(f: &Field, plane: [Elem; 4], quadric: &Form) -> Option<Conic> {
        let plane = normalize(f, plane)?;
        let quadric = reduce_mod_plane(f, &plane, quadric);
        if quadric.is_zero() {
            return None;
        }
        let lead = *quadric.coeffs().iter().find(|c| !c.is_zero()).unwrap();
        let quadric = quadric.scale(f, f.inv(lead).unwrap());
        let t = Ternary::from_quadric(&plane, &quadric);
        let reduced = !t.is_square_multiple(f);
        let reducible = !reduced || t.splits(f);
        Some(Conic {
            plane,
            quadric,
            reducible,
            reduced,
        })
    }

    /// Union of two distinct coplanar lines.
    pub fn line_pair(f: &Field, a: &Line, b: &Line) -> Option<Conic> {
        if a == b {
            return None;
        }
        let plane = plane_containing(f, a, b)?;
        let la = Form::linear(independent_form(f, a, &plane));
        let lb = Form::linear(independent_form(f, b, &plane));
        Conic::new(f, plane, &la.mul(f, &lb))
    }

    /// All conics in `plane` through the scheme `w`, as quadrics.
    pub fn conics_through(f: &Field, plane: [Elem; 4], w: &ZeroDimScheme) -> Vec<Form> {
        let v = pivot(&plane);
        let kept = kept_monomials(v);
        let cm = condition_matrix(f, w, 2).matrix.select_columns(&kept);
        let cm = if cm.rows() == 0 {
            Matrix::zeros(1, kept.len())
        } else {
            cm
        };
        cm.nullspace(f)
            .into_iter()
            .map(|ns| {
                let mut coeffs = vec![Elem::ZERO; 10];
                for (j, &k) in kept.iter().enumerate() {
                    coeffs[k] = ns[j];
                }
                Form::new(2, coeffs)
            })
            .collect()
    }

    /// The unique conic in `plane` through `w`, when exactly one exists.
    pub fn unique_through(f: &Field, plane: [Elem; 4], w: &ZeroDimScheme) -> Option<Conic> {
        let forms = Conic::conics_through(f, plane, w);
        if forms.len() != 1 {
            return None;
        }
        Conic::new(f, plane, &forms[0])
    }

    pub fn plane(&self) -> &[Elem; 4] {
        &self.plane
    }

    pub fn quadric(&self) -> &Form {
        &self.quadric
    }

    /// Factors into two linear forms over the base field.
    pub fn is_reducible(&self) -> bool {
        self.reducible
    }

    /// Not a double line.
    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// The two forms cutting the conic.
    pub fn forms(&self) -> [Form; 2] {
        [Form::linear(self.plane), self.quadric.clone()]
    }

    pub fn contains(&self, f: &Field, p: &[Elem; 4]) -> bool {
        f.dot(&self.plane, p).is_zero() && self.quadric.eval(f, p).is_zero()
    }

    pub fn intersection_degree(&self, f: &Field, z: &ZeroDimScheme) -> u32 {
        z.intersection_degree(f, &self.forms())
    }
}

/// The plane containing two coplanar lines.
fn plane_containing(f: &Field, a: &Line, b: &Line) -> Option<[Elem; 4]> {
    // points of both lines span the plane; its form spans their annihilator
    let [p0, p1] = a.spanning_points(f);
    let [p2, p3] = b.spanning_points(f);
    let m = Matrix::from_rows(4, vec![p0.to_vec(), p1.to_vec(), p2.to_vec(), p3.to_vec()]);
    let ns = m.nullspace(f);
    if ns.len() != 1 {
        return None;
    }
    normalize(f, [ns[0][0], ns[0][1], ns[0][2], ns[0][3]])
}

/// A defining form of `l` that is not a multiple of `plane`.
fn independent_form(f: &Field, l: &Line, plane: &[Elem; 4]) -> [Elem; 4] {
    for form in l.forms() {
        let m = Matrix::from_rows(4, vec![form.to_vec(), plane.to_vec()]);
        if m.rank(f) == 2 {
            return *form;
        }
    }
    unreachable!("a line is not contained in a single form's multiples")
}

/// Rewrites `q` on the plane by substituting the pivot variable.
fn reduce_mod_plane(f: &Field, plane: &[Elem; 4], q: &Form) -> Form {
    let v = pivot(plane);
    let inv = f.inv(plane[v]).unwrap();
    // x_v = Σ_{j≠v} -(h_j / h_v) x_j
    let subst: Vec<Form> = (0..4)
        .map(|a| {
            let mut c = [Elem::ZERO; 4];
            if a == v {
                for j in 0..4 {
                    if j != v {
                        c[j] = f.neg(f.mul(plane[j], inv));
                    }
                }
            } else {
                c[a] = Elem::ONE;
            }
            Form::linear(c)
        })
        .collect();
    let mut out = Form::zero(2);
    for (m, &c) in monomial_basis(2).iter().zip(q.coeffs()) {
        if c.is_zero() {
            continue;
        }
        let vars: Vec<usize> = (0..4)
            .flat_map(|i| std::iter::repeat_n(i, m[i] as usize))
            .collect();
        let term = subst[vars[0]].mul(f, &subst[vars[1]]).scale(f, c);
        let coeffs = out
            .coeffs()
            .iter()
            .zip(term.coeffs())
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        out = Form::new(2, coeffs);
    }
    out
}

/// A ternary quadratic form `Σ_{i≤j} a_ij u_i u_j` in the plane coordinates.
struct Ternary {
    a: [[Elem; 3]; 3],
}

impl Ternary {
    fn from_quadric(plane: &[Elem; 4], q: &Form) -> Ternary {
        let v = pivot(plane);
        let vars: Vec<usize> = (0..4).filter(|&i| i != v).collect();
        let mut a = [[Elem::ZERO; 3]; 3];
        for (m, &c) in monomial_basis(2).iter().zip(q.coeffs()) {
            if c.is_zero() {
                continue;
            }
            let idx: Vec<usize> = (0..3)
                .flat_map(|i| std::iter::repeat_n(i, m[vars[i]] as usize))
                .collect();
            a[idx[0].min(idx[1])][idx[0].max(idx[1])] = c;
        }
        Ternary { a }
    }

    fn eval(&self, f: &Field, u: &[Elem; 3]) -> Elem {
        let mut acc = Elem::ZERO;
        for i in 0..3 {
            for j in i..3 {
                acc = f.add(acc, f.mul(self.a[i][j], f.mul(u[i], u[j])));
            }
        }
        acc
    }

    /// Polar form `Q(u + w) - Q(u) - Q(w)`.
    fn polar(&self, f: &Field, u: &[Elem; 3], w: &[Elem; 3]) -> Elem {
        let s = [f.add(u[0], w[0]), f.add(u[1], w[1]), f.add(u[2], w[2])];
        f.sub(f.sub(self.eval(f, &s), self.eval(f, u)), self.eval(f, w))
    }

    /// Matrix of partial derivatives.
    fn jacobian(&self, f: &Field) -> Matrix {
        let mut m = Matrix::zeros(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                let v = if i == j {
                    f.add(self.a[i][i], self.a[i][i])
                } else {
                    self.a[i.min(j)][i.max(j)]
                };
                m.set(i, j, v);
            }
        }
        m
    }

    /// `Q = c·L²` for a linear form `L`.
    fn is_square_multiple(&self, f: &Field) -> bool {
        if f.p() == 2 {
            // squares have no cross terms, and every diagonal form is a square
            return self.a[0][1].is_zero() && self.a[0][2].is_zero() && self.a[1][2].is_zero();
        }
        self.jacobian(f).rank(f) <= 1
    }

    /// Factors into linear forms over the base field.
    fn splits(&self, f: &Field) -> bool {
        let kernel = self.jacobian(f).nullspace(f);
        let singular = kernel
            .iter()
            .map(|v| [v[0], v[1], v[2]])
            .find(|u| self.eval(f, u).is_zero());
        let Some(p) = singular else {
            return false;
        };
        // Q restricted to a line avoiding the singular point is a binary form
        // whose roots are the directions of the component lines
        let pivot = p.iter().position(|e| !e.is_zero()).unwrap();
        let others: Vec<usize> = (0..3).filter(|&i| i != pivot).collect();
        let mut a = [Elem::ZERO; 3];
        a[others[0]] = Elem::ONE;
        let mut b = [Elem::ZERO; 3];
        b[others[1]] = Elem::ONE;
        let qa = self.eval(f, &a);
        let qb = self.eval(f, &b);
        let bab = self.polar(f, &a, &b);
        if qa.is_zero() || qb.is_zero() {
            return true;
        }
        binary_quadratic_has_root(f, qa, bab, qb)
    }
}

/// Whether `a s² + b s + c` has a root in the field (`a ≠ 0`).
pub(crate) fn binary_quadratic_has_root(f: &Field, a: Elem, b: Elem, c: Elem) -> bool {
    if f.p() == 2 {
        if b.is_zero() {
            return true;
        }
        // s = (b/a) r turns it into r² + r + ac/b², solvable iff the trace vanishes
        let t = f.div(f.mul(a, c), f.mul(b, b)).unwrap();
        return f.trace(t).is_zero();
    }
    let four = f.from_int(4);
    let disc = f.sub(f.mul(b, b), f.mul(four, f.mul(a, c)));
    f.is_square(disc)
}
