//! Truncated power series and homogeneous forms in X, Y, Z, T.

use crate::gf::{Elem, Field};

/// A power series `Σ c_i t^i` known modulo `t^prec`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Elem>,
}

impl Series {
    pub fn zero(prec: usize) -> Series {
        Series {
            coeffs: vec![Elem::ZERO; prec],
        }
    }

    pub fn constant(c: Elem, prec: usize) -> Series {
        let mut s = Series::zero(prec);
        if prec > 0 {
            s.coeffs[0] = c;
        }
        s
    }

    /// `c + t`
    pub fn shifted_parameter(c: Elem, prec: usize) -> Series {
        let mut s = Series::constant(c, prec);
        if prec > 1 {
            s.coeffs[1] = Elem::ONE;
        }
        s
    }

    /// `c t^k`
    pub fn monomial(c: Elem, k: usize, prec: usize) -> Series {
        let mut s = Series::zero(prec);
        if k < prec {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn from_coeffs(mut coeffs: Vec<Elem>, prec: usize) -> Series {
        coeffs.resize(prec, Elem::ZERO);
        Series { coeffs }
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    /// Index of the first nonzero coefficient, `None` when zero to this precision.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, prec: usize) -> Series {
        Series::from_coeffs(self.coeffs[..prec.min(self.prec())].to_vec(), prec)
    }

    pub fn add(&self, f: &Field, o: &Series) -> Series {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&o.coeffs)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Series { coeffs }
    }

    pub fn sub(&self, f: &Field, o: &Series) -> Series {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&o.coeffs)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Series { coeffs }
    }

    pub fn scale(&self, f: &Field, c: Elem) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn mul(&self, f: &Field, o: &Series) -> Series {
        let prec = self.prec().min(o.prec());
        let mut out = vec![Elem::ZERO; prec];
        for (i, &a) in self.coeffs.iter().enumerate().take(prec) {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate().take(prec - i) {
                if !b.is_zero() {
                    out[i + j] = f.mul_add(out[i + j], a, b);
                }
            }
        }
        Series { coeffs: out }
    }

    pub fn pow(&self, f: &Field, mut e: u64) -> Series {
        let mut acc = Series::constant(Elem::ONE, self.prec());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(f, &base);
            }
        }
        acc
    }

    /// `s^(p^e)`: coefficients raised to `p^e`, exponents scaled by `p^e`.
    pub fn frobenius(&self, f: &Field, e: u32) -> Series {
        let scale = (f.p() as usize).pow(e);
        let mut out = vec![Elem::ZERO; self.prec()];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let j = i * scale;
            if j >= out.len() {
                break;
            }
            out[j] = f.frobenius_power(c, e);
        }
        Series { coeffs: out }
    }

    /// Inverse of a unit series (nonzero constant term).
    pub fn inverse(&self, f: &Field) -> Option<Series> {
        let c0 = *self.coeffs.first()?;
        let inv0 = f.inv(c0).ok()?;
        let prec = self.prec();
        let mut out = vec![Elem::ZERO; prec];
        out[0] = inv0;
        for n in 1..prec {
            let mut acc = Elem::ZERO;
            for i in 1..=n {
                acc = f.mul_add(acc, self.coeffs[i], out[n - i]);
            }
            out[n] = f.neg(f.mul(acc, inv0));
        }
        Some(Series { coeffs: out })
    }
}

/// Exponents of X, Y, Z, T.
pub type Monomial = [u32; 4];

/// All degree-`d` monomials, lexicographic with X > Y > Z > T (X^d first).
pub fn monomial_basis(d: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(monomial_count(d));
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            for c in (0..=d - a - b).rev() {
                out.push([a, b, c, d - a - b - c]);
            }
        }
    }
    out
}

/// `C(d+3, 3)`
pub fn monomial_count(d: u32) -> usize {
    let d = d as usize;
    (d + 1) * (d + 2) * (d + 3) / 6
}

/// Binomial coefficient that is zero outside `0 <= k <= n` (and for negative `n`).
pub fn binomial(n: i64, k: i64) -> u128 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Value of every degree-`d` monomial at a point, in [`monomial_basis`] order.
pub fn eval_monomials(f: &Field, d: u32, point: &[Elem; 4]) -> Vec<Elem> {
    let powers: Vec<Vec<Elem>> = point
        .iter()
        .map(|&v| {
            let mut p = Vec::with_capacity(d as usize + 1);
            let mut cur = Elem::ONE;
            for _ in 0..=d {
                p.push(cur);
                cur = f.mul(cur, v);
            }
            p
        })
        .collect();
    monomial_basis(d)
        .iter()
        .map(|m| {
            let mut acc = powers[0][m[0] as usize];
            for v in 1..4 {
                acc = f.mul(acc, powers[v][m[v] as usize]);
            }
            acc
        })
        .collect()
}

/// Restrictions of every degree-`d` monomial to a branch given by series for
/// the four homogeneous coordinates, in [`monomial_basis`] order.
pub fn restrict_monomials(f: &Field, d: u32, coords: &[Series; 4]) -> Vec<Series> {
    let prec = coords[0].prec();
    let powers: Vec<Vec<Series>> = coords
        .iter()
        .map(|s| {
            let mut p = Vec::with_capacity(d as usize + 1);
            let mut cur = Series::constant(Elem::ONE, prec);
            for _ in 0..=d {
                p.push(cur.clone());
                cur = cur.mul(f, s);
            }
            p
        })
        .collect();
    monomial_basis(d)
        .iter()
        .map(|m| {
            let mut acc = powers[0][m[0] as usize].clone();
            for v in 1..4 {
                if m[v] > 0 {
                    acc = acc.mul(f, &powers[v][m[v] as usize]);
                }
            }
            acc
        })
        .collect()
}

/// A homogeneous form of fixed degree, dense over [`monomial_basis`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form {
    degree: u32,
    coeffs: Vec<Elem>,
}

impl Form {
    pub fn new(degree: u32, coeffs: Vec<Elem>) -> Form {
        assert_eq!(coeffs.len(), monomial_count(degree), "coefficient count");
        Form { degree, coeffs }
    }

    /// `aX + bY + cZ + dT`
    pub fn linear(c: [Elem; 4]) -> Form {
        Form {
            degree: 1,
            coeffs: c.to_vec(),
        }
    }

    pub fn zero(degree: u32) -> Form {
        Form {
            degree,
            coeffs: vec![Elem::ZERO; monomial_count(degree)],
        }
    }

    /// A single monomial with coefficient 1.
    pub fn monomial(m: Monomial) -> Form {
        let degree = m.iter().sum();
        let idx = monomial_basis(degree).iter().position(|x| *x == m).unwrap();
        let mut coeffs = vec![Elem::ZERO; monomial_count(degree)];
        coeffs[idx] = Elem::ONE;
        Form { degree, coeffs }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, f: &Field, c: Elem) -> Form {
        Form {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn eval(&self, f: &Field, point: &[Elem; 4]) -> Elem {
        f.dot(&self.coeffs, &eval_monomials(f, self.degree, point))
    }

    pub fn restrict(&self, f: &Field, coords: &[Series; 4]) -> Series {
        let prec = coords[0].prec();
        let mut acc = Series::zero(prec);
        for (c, s) in self
            .coeffs
            .iter()
            .zip(restrict_monomials(f, self.degree, coords))
        {
            if !c.is_zero() {
                acc = acc.add(f, &s.scale(f, *c));
            }
        }
        acc
    }

    /// Product of two forms.
    pub fn mul(&self, f: &Field, o: &Form) -> Form {
        let deg = self.degree + o.degree;
        let basis = monomial_basis(deg);
        let index = |m: &Monomial| basis.iter().position(|x| x == m).unwrap();
        let mut out = vec![Elem::ZERO; basis.len()];
        for (ma, &a) in monomial_basis(self.degree).iter().zip(&self.coeffs) {
            if a.is_zero() {
                continue;
            }
            for (mb, &b) in monomial_basis(o.degree).iter().zip(&o.coeffs) {
                if b.is_zero() {
                    continue;
                }
                let m = [ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2], ma[3] + mb[3]];
                let i = index(&m);
                out[i] = f.mul_add(out[i], a, b);
            }
        }
        Form {
            degree: deg,
            coeffs: out,
        }
    }
}
