//! Finite fields GF(p^k) in a fixed polynomial basis.
//!
//! Elements are stored as their base-p encoding `Σ c_i p^i` (constant term
//! least significant). The modulus of every field is the smallest monic
//! irreducible polynomial of degree `k` under that same encoding, so two
//! builds of the same `(p, k)` always agree on every exported value.
//!
//! Multiplication goes through exponent/logarithm tables built once per field
//! from the reference polynomial arithmetic in [`FieldDescriptor`]; addition
//! is digit-wise (XOR in characteristic 2, chunked tables otherwise).

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest field order accepted; tables are dense in the order.
pub const MAX_FIELD_ORDER: u64 = 1 << 24;

/// Widest digit chunk used for the addition tables (entries per side).
const MAX_ADD_CHUNK: u32 = 729;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("GF({p}^{k}) exceeds the supported element encoding (order < 2^24)")]
    TooLarge { p: u32, k: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    DescriptorMismatch,
    #[error("GF(p^{m}) is not a subfield of GF(p^{n})")]
    NotSubfield { m: u32, n: u32 },
    #[error("characteristics differ ({0} vs {1})")]
    CharacteristicMismatch(u32, u32),
    #[error("encoded value {value} is out of range for a field of order {order}")]
    OutOfRange { value: u64, order: u64 },
}

pub type Result<T> = std::result::Result<T, FieldError>;

/// An element of some [`Field`], stored as its base-p encoding.
///
/// `Elem` does not carry its field; kernels pass the field alongside. The
/// checked wrapper [`FieldElement`] pairs the two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// The base-p encoding of this element.
    #[inline]
    pub fn encoded(self) -> u32 {
        self.0
    }

    #[inline]
    pub(crate) fn from_raw(v: u32) -> Elem {
        Elem(v)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Characteristic, degree and modulus of a field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldDescriptor {
    p: u32,
    k: u32,
    /// c_0..c_{k-1}; the leading 1 is implicit.
    modulus: Vec<u32>,
}

impl FieldDescriptor {
    /// Picks the deterministic modulus for GF(p^k).
    pub fn new(p: u32, k: u32) -> Result<FieldDescriptor> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let order = (p as u64).checked_pow(k).filter(|&o| o <= MAX_FIELD_ORDER);
        let order = order.ok_or(FieldError::TooLarge { p, k })?;
        // Monic degree-k polynomials in encoding order: p^k .. 2p^k - 1.
        for low in 0..order {
            let coeffs = digits(low, p, k as usize);
            let mut full = coeffs.clone();
            full.push(1);
            if is_irreducible(&full, p) {
                return Ok(FieldDescriptor {
                    p,
                    k,
                    modulus: coeffs,
                });
            }
        }
        unreachable!("an irreducible polynomial of every degree exists")
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.k)
    }

    /// Modulus coefficients c_0..c_{k-1} (leading 1 omitted).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Modulus encoded with its leading coefficient, e.g. `t^6+t+1` over GF(2) is 67.
    pub fn modulus_encoded(&self) -> u64 {
        encode_digits(&self.modulus, self.p) + self.order()
    }

    /// The `p k modulus_encoded` header line shared by all exported files.
    pub fn header_line(&self) -> String {
        format!("{} {} {}", self.p, self.k, self.modulus_encoded())
    }

    /// Parses a header line and checks it names this crate's modulus.
    pub fn parse_header(line: &str) -> std::result::Result<FieldDescriptor, String> {
        let parts: Vec<u64> = line
            .split_whitespace()
            .map(|s| {
                s.parse::<u64>()
                    .map_err(|e| format!("bad header field {s:?}: {e}"))
            })
            .collect::<std::result::Result<_, _>>()?;
        if parts.len() != 3 {
            return Err(format!("expected `p k modulus`, got {line:?}"));
        }
        let desc =
            FieldDescriptor::new(parts[0] as u32, parts[1] as u32).map_err(|e| e.to_string())?;
        if desc.modulus_encoded() != parts[2] {
            return Err(format!(
                "modulus {} does not match the canonical modulus {}",
                parts[2],
                desc.modulus_encoded()
            ));
        }
        Ok(desc)
    }

    /// Schoolbook product reduced by the modulus; the reference arithmetic
    /// every table is built from.
    pub fn mul_reference(&self, a: u32, b: u32) -> u32 {
        let k = self.k as usize;
        let p = self.p as u64;
        let da = digits(a as u64, self.p, k);
        let db = digits(b as u64, self.p, k);
        let mut prod = vec![0u64; 2 * k];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for deg in (k..2 * k).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            // t^k = -Σ c_i t^i
            for (i, &m) in self.modulus.iter().enumerate() {
                let idx = deg - k + i;
                prod[idx] = (prod[idx] + (p - m as u64) * c) % p;
            }
        }
        let low: Vec<u32> = prod[..k].iter().map(|&c| c as u32).collect();
        encode_digits(&low, self.p) as u32
    }

    pub fn add_reference(&self, a: u32, b: u32) -> u32 {
        let k = self.k as usize;
        let da = digits(a as u64, self.p, k);
        let db = digits(b as u64, self.p, k);
        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        encode_digits(&sum, self.p) as u32
    }

    pub fn pow_reference(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_reference(acc, base);
            }
            base = self.mul_reference(base, base);
            e >>= 1;
        }
        acc
    }
}

/// A field with its arithmetic tables. Immutable after construction.
pub struct Field {
    desc: FieldDescriptor,
    order: u32,
    chunk_size: u32,
    n_chunks: u32,
    add_chunk: Vec<u16>,
    neg_chunk: Vec<u16>,
    exp: Vec<u32>,
    log: Vec<u32>,
    generator: Elem,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF({}^{})[{}]",
            self.desc.p,
            self.desc.k,
            self.desc.modulus_encoded()
        )
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.desc == other.desc
    }
}
impl Eq for Field {}

impl Field {
    pub fn new(p: u32, k: u32) -> Result<Arc<Field>> {
        let desc = FieldDescriptor::new(p, k)?;
        Ok(Arc::new(Field::from_descriptor(desc)))
    }

    pub fn from_descriptor(desc: FieldDescriptor) -> Field {
        let order = desc.order() as u32;
        let p = desc.p;

        let mut chunk_digits = 1u32;
        while chunk_digits < desc.k && p.pow(chunk_digits + 1) <= MAX_ADD_CHUNK {
            chunk_digits += 1;
        }
        let chunk_size = p.pow(chunk_digits);
        let n_chunks = desc.k.div_ceil(chunk_digits);
        let (mut add_chunk, mut neg_chunk) = (Vec::new(), Vec::new());
        if p != 2 {
            add_chunk = vec![0u16; (chunk_size * chunk_size) as usize];
            neg_chunk = vec![0u16; chunk_size as usize];
            for a in 0..chunk_size {
                let da = digits(a as u64, p, chunk_digits as usize);
                let na: Vec<u32> = da.iter().map(|&c| (p - c) % p).collect();
                neg_chunk[a as usize] = encode_digits(&na, p) as u16;
                for b in 0..chunk_size {
                    let db = digits(b as u64, p, chunk_digits as usize);
                    let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                    add_chunk[(a * chunk_size + b) as usize] = encode_digits(&s, p) as u16;
                }
            }
        }

        let group = order - 1;
        let factors = prime_factors(group as u64);
        let generator = (1..order)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&r| desc.pow_reference(g, (group as u64) / r) != 1)
            })
            .expect("multiplicative group is cyclic");

        let mut exp = vec![0u32; 2 * group as usize];
        let mut log = vec![0u32; order as usize];
        let mut cur = 1u32;
        for i in 0..group as usize {
            exp[i] = cur;
            log[cur as usize] = i as u32;
            cur = desc.mul_reference(cur, generator);
        }
        for i in group as usize..exp.len() {
            exp[i] = exp[i - group as usize];
        }

        Field {
            desc,
            order,
            chunk_size,
            n_chunks,
            add_chunk,
            neg_chunk,
            exp,
            log,
            generator: Elem(generator),
        }
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.desc
    }

    pub fn p(&self) -> u32 {
        self.desc.p
    }

    pub fn k(&self) -> u32 {
        self.desc.k
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// The smallest-encoding primitive element (used internally by the tables).
    pub fn primitive_element(&self) -> Elem {
        self.generator
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order).map(Elem)
    }

    /// Embeds an integer through the prime field.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.desc.p as i64) as u32)
    }

    /// The element `t` of the polynomial basis (0 in a prime field, whose modulus is `t`).
    pub fn t(&self) -> Elem {
        if self.desc.k == 1 {
            Elem::ZERO
        } else {
            Elem(self.desc.p)
        }
    }

    pub fn encode(&self, a: Elem) -> u64 {
        a.0 as u64
    }

    pub fn decode(&self, n: u64) -> Result<Elem> {
        if n >= self.order as u64 {
            return Err(FieldError::OutOfRange {
                value: n,
                order: self.order as u64,
            });
        }
        Ok(Elem(n as u32))
    }

    /// Polynomial-basis coefficients, constant term first.
    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        digits(a.0 as u64, self.desc.p, self.desc.k as usize)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() > self.desc.k as usize || coeffs.iter().any(|&c| c >= self.desc.p) {
            return Err(FieldError::OutOfRange {
                value: encode_digits(coeffs, self.desc.p),
                order: self.order as u64,
            });
        }
        Ok(Elem(encode_digits(coeffs, self.desc.p) as u32))
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.desc.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if self.n_chunks == 1 {
            return Elem(self.add_chunk[(a.0 * self.chunk_size + b.0) as usize] as u32);
        }
        let cs = self.chunk_size;
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        let mut scale = 1u32;
        for _ in 0..self.n_chunks {
            let s = self.add_chunk[((x % cs) * cs + y % cs) as usize] as u32;
            out += s * scale;
            x /= cs;
            y /= cs;
            scale *= cs;
        }
        Elem(out)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.desc.p == 2 {
            return a;
        }
        if self.n_chunks == 1 {
            return Elem(self.neg_chunk[a.0 as usize] as u32);
        }
        let cs = self.chunk_size;
        let mut x = a.0;
        let mut out = 0u32;
        let mut scale = 1u32;
        for _ in 0..self.n_chunks {
            out += self.neg_chunk[(x % cs) as usize] as u32 * scale;
            x /= cs;
            scale *= cs;
        }
        Elem(out)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        Elem(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    /// `a + b*c`
    #[inline]
    pub fn mul_add(&self, a: Elem, b: Elem, c: Elem) -> Elem {
        self.add(a, self.mul(b, c))
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let group = self.order - 1;
        Ok(Elem(
            self.exp[((group - self.log[a.0 as usize]) % group) as usize],
        ))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for any integer exponent; negative exponents go through the inverse.
    pub fn pow(&self, a: Elem, e: i64) -> Result<Elem> {
        if e == 0 {
            return Ok(Elem::ONE);
        }
        if a.0 == 0 {
            return if e > 0 {
                Ok(Elem::ZERO)
            } else {
                Err(FieldError::DivisionByZero)
            };
        }
        let group = (self.order - 1) as i128;
        let l = self.log[a.0 as usize] as i128;
        let idx = (l * e as i128).rem_euclid(group);
        Ok(Elem(self.exp[idx as usize]))
    }

    /// `a^n` for a non-negative exponent (never fails).
    #[inline]
    pub fn pow_u(&self, a: Elem, n: u64) -> Elem {
        if n == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let group = (self.order - 1) as u64;
        let idx = (self.log[a.0 as usize] as u64 * (n % group)) % group;
        Elem(self.exp[idx as usize])
    }

    /// `a^(p^e)`.
    pub fn frobenius_power(&self, a: Elem, e: u32) -> Elem {
        if a.0 == 0 {
            return a;
        }
        let group = (self.order - 1) as u64;
        let mut exponent = 1u64;
        for _ in 0..(e % self.desc.k) {
            exponent = exponent * self.desc.p as u64 % group.max(1);
        }
        self.pow_u(a, exponent)
    }

    /// True iff `a` lies in the subfield GF(p^m), i.e. `a^(p^m) = a`.
    pub fn is_in_subfield(&self, a: Elem, m: u32) -> Result<bool> {
        if m == 0 || !self.desc.k.is_multiple_of(m) {
            return Err(FieldError::NotSubfield { m, n: self.desc.k });
        }
        Ok(self.frobenius_power(a, m) == a)
    }

    /// Dot product of two equal-length slices.
    #[inline]
    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        a.iter()
            .zip(b)
            .fold(Elem::ZERO, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    /// Finite-field trace down to GF(p).
    pub fn trace(&self, a: Elem) -> Elem {
        let mut acc = Elem::ZERO;
        let mut cur = a;
        for _ in 0..self.desc.k {
            acc = self.add(acc, cur);
            cur = self.frobenius_power(cur, 1);
        }
        acc
    }

    /// True iff `a` is a square (zero counts as a square).
    pub fn is_square(&self, a: Elem) -> bool {
        if a.0 == 0 || self.desc.p == 2 {
            return true;
        }
        self.log[a.0 as usize].is_multiple_of(2)
    }

    /// A square root of `a`, if one exists.
    pub fn sqrt(&self, a: Elem) -> Option<Elem> {
        if a.0 == 0 {
            return Some(a);
        }
        let group = self.order - 1;
        let l = self.log[a.0 as usize];
        if self.desc.p == 2 {
            // squaring is a bijection on an odd-order group
            let half = (l as u64 * (group as u64).div_ceil(2)) % group as u64;
            return Some(Elem(self.exp[half as usize]));
        }
        l.is_multiple_of(2)
            .then(|| Elem(self.exp[(l / 2) as usize]))
    }
}

/// A field element paired with its field; every operation checks that both
/// operands come from the same descriptor.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<Field>,
    value: Elem,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{:?}", self.value.0, self.field)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.field.desc == other.field.desc
    }
}
impl Eq for FieldElement {}

/// The binary operations of [`FieldElement::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElement {
    pub fn new(field: &Arc<Field>, value: Elem) -> FieldElement {
        debug_assert!(value.0 < field.order);
        FieldElement {
            field: Arc::clone(field),
            value,
        }
    }

    pub fn decode(field: &Arc<Field>, n: u64) -> Result<FieldElement> {
        Ok(FieldElement {
            field: Arc::clone(field),
            value: field.decode(n)?,
        })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn encode(&self) -> u64 {
        self.value.0 as u64
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field.desc == other.field.desc {
            Ok(())
        } else {
            Err(FieldError::DescriptorMismatch)
        }
    }

    fn wrap(&self, value: Elem) -> FieldElement {
        FieldElement {
            field: Arc::clone(&self.field),
            value,
        }
    }

    pub fn arith(&self, op: ArithOp, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        let f = &self.field;
        let v = match op {
            ArithOp::Add => f.add(self.value, other.value),
            ArithOp::Sub => f.sub(self.value, other.value),
            ArithOp::Mul => f.mul(self.value, other.value),
            ArithOp::Div => f.div(self.value, other.value)?,
        };
        Ok(self.wrap(v))
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.arith(ArithOp::Add, other)
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.arith(ArithOp::Sub, other)
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.arith(ArithOp::Mul, other)
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.arith(ArithOp::Div, other)
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.wrap(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: i64) -> Result<FieldElement> {
        Ok(self.wrap(self.field.pow(self.value, e)?))
    }

    pub fn frobenius_power(&self, e: u32) -> FieldElement {
        self.wrap(self.field.frobenius_power(self.value, e))
    }

    pub fn is_in_subfield(&self, m: u32) -> Result<bool> {
        self.field.is_in_subfield(self.value, m)
    }
}

/// The deterministic embedding GF(p^m) → GF(p^n): the basis element `t` of the
/// source goes to the smallest-encoding root of the source modulus in the target.
#[derive(Debug, Clone)]
pub struct SubfieldEmbedding {
    source: Arc<Field>,
    target: Arc<Field>,
    image_of_t: Elem,
}

impl SubfieldEmbedding {
    pub fn new(source: &Arc<Field>, target: &Arc<Field>) -> Result<SubfieldEmbedding> {
        if source.p() != target.p() {
            return Err(FieldError::CharacteristicMismatch(source.p(), target.p()));
        }
        let (m, n) = (source.k(), target.k());
        if n % m != 0 {
            return Err(FieldError::NotSubfield { m, n });
        }
        let image_of_t = if m == 1 {
            Elem::ZERO
        } else {
            let mut full: Vec<Elem> = source.desc.modulus.iter().map(|&c| Elem(c)).collect();
            full.push(Elem::ONE);
            target
                .elements()
                .find(|&r| horner(target, &full, r).is_zero())
                .expect("the modulus splits in every extension of degree divisible by m")
        };
        Ok(SubfieldEmbedding {
            source: Arc::clone(source),
            target: Arc::clone(target),
            image_of_t,
        })
    }

    pub fn image_of_generator(&self) -> Elem {
        self.image_of_t
    }

    pub fn map(&self, a: Elem) -> Elem {
        let coeffs: Vec<Elem> = self.source.coeffs(a).into_iter().map(Elem).collect();
        horner(&self.target, &coeffs, self.image_of_t)
    }

    pub fn map_checked(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.field.desc != self.source.desc {
            return Err(FieldError::DescriptorMismatch);
        }
        Ok(FieldElement::new(&self.target, self.map(a.value)))
    }
}

/// Convenience wrapper around [`SubfieldEmbedding`].
pub fn embed_subfield(a: &FieldElement, target: &Arc<Field>) -> Result<FieldElement> {
    SubfieldEmbedding::new(a.field(), target)?.map_checked(a)
}

/// Evaluates `Σ coeffs[i] x^i` (coefficients already in `field`; prime-field
/// coefficients are valid in every extension since their encoding is the constant).
fn horner(field: &Field, coeffs: &[Elem], x: Elem) -> Elem {
    coeffs
        .iter()
        .rev()
        .fold(Elem::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `(p, e)` with `q = p^e`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn digits(mut n: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((n % p as u64) as u32);
        n /= p as u64;
    }
    out
}

fn encode_digits(d: &[u32], p: u32) -> u64 {
    d.iter()
        .rev()
        .fold(0u64, |acc, &c| acc * p as u64 + c as u64)
}

/// Remainder of `a` modulo the monic-or-not polynomial `b` over GF(p)
/// (coefficients constant-first, trailing zeros allowed).
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    let db = b.iter().rposition(|&c| c != 0).expect("nonzero divisor");
    let lead_inv = mod_inv(b[db], p);
    loop {
        let dr = match r.iter().rposition(|&c| c != 0) {
            Some(d) if d >= db => d,
            _ => break,
        };
        let factor = (r[dr] as u64 * lead_inv as u64 % p as u64) as u32;
        let shift = dr - db;
        for (i, &c) in b[..=db].iter().enumerate() {
            let sub = (factor as u64 * c as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = a as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut div = digits(low, p, d);
            div.push(1);
            if poly_rem(poly, &div, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn deterministic_moduli() {
        assert_eq!(FieldDescriptor::new(2, 2).unwrap().modulus_encoded(), 7);
        assert_eq!(FieldDescriptor::new(2, 6).unwrap().modulus_encoded(), 67);
        // k = 1 uses the polynomial t
        assert_eq!(FieldDescriptor::new(3, 1).unwrap().modulus_encoded(), 3);
        assert_eq!(FieldDescriptor::new(2, 6).unwrap().header_line(), "2 6 67");
    }

    #[test]
    fn degree_six_modulus_matches_gcd_sieve() {
        // Independent route: a monic degree-6 f over GF(2) is irreducible iff
        // gcd(f, t^(2^i) - t) = 1 for i = 1, 2, 3.
        fn mulmod(a: u64, b: u64, f: u64) -> u64 {
            let mut r = 0u64;
            for i in 0..6 {
                if b >> i & 1 == 1 {
                    r ^= a << i;
                }
            }
            for d in (6..12).rev() {
                if r >> d & 1 == 1 {
                    r ^= f << (d - 6);
                }
            }
            r
        }
        fn gcd(mut a: u64, mut b: u64) -> u64 {
            let deg = |x: u64| 63 - x.leading_zeros() as i32;
            while b != 0 {
                while a != 0 && deg(a) >= deg(b) {
                    a ^= b << (deg(a) - deg(b));
                }
                std::mem::swap(&mut a, &mut b);
            }
            a
        }
        let first = (64u64..128)
            .find(|&f| {
                let mut x = 2u64;
                (1..=3).all(|_| {
                    x = mulmod(x, x, f);
                    gcd(f, x ^ 2) == 1
                })
            })
            .unwrap();
        assert_eq!(first, 67);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FieldDescriptor::new(4, 2), Err(FieldError::NotPrime(4)));
        assert_eq!(FieldDescriptor::new(2, 0), Err(FieldError::ZeroDegree));
        assert!(matches!(
            FieldDescriptor::new(2, 40),
            Err(FieldError::TooLarge { .. })
        ));
    }

    #[test]
    fn gf4_products() {
        let f = Field::new(2, 2).unwrap();
        let t = f.decode(2).unwrap();
        let t1 = f.decode(3).unwrap();
        assert_eq!(f.mul(t, t), t1);
        assert_eq!(f.mul(t, t1), Elem::ONE);
        assert_eq!(f.frobenius_power(t, 1), t1);
    }

    #[test]
    fn char_two_doubling_vanishes() {
        let f = Field::new(2, 6).unwrap();
        for a in f.elements() {
            assert!(f.add(a, a).is_zero());
        }
    }

    #[test]
    fn gf9_encoding() {
        let f = Field::new(3, 2).unwrap();
        assert_eq!(f.coeffs(f.decode(7).unwrap()), vec![1, 2]);
        assert_eq!(f.from_coeffs(&[1, 2]).unwrap().encoded(), 7);
        assert!(f.decode(9).is_err());
    }

    #[test]
    fn tables_agree_with_reference_arithmetic() {
        for (p, k) in [(2, 6), (3, 6), (7, 2), (5, 3)] {
            let f = Field::new(p, k).unwrap();
            let d = f.descriptor().clone();
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            for _ in 0..10_000 {
                let a = rng.gen_range(0..f.order());
                let b = rng.gen_range(0..f.order());
                assert_eq!(f.mul(Elem(a), Elem(b)).0, d.mul_reference(a, b));
                assert_eq!(f.add(Elem(a), Elem(b)).0, d.add_reference(a, b));
                assert_eq!(f.sub(f.add(Elem(a), Elem(b)), Elem(b)), Elem(a));
            }
        }
    }

    #[test]
    fn field_axioms_sampled() {
        for (p, k) in [(2, 6), (3, 6), (7, 6), (2, 12)] {
            let f = Field::new(p, k).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            for _ in 0..10_000 {
                let [a, b, c] = [0; 3].map(|_| Elem(rng.gen_range(0..f.order())));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.add(a, b), f.add(b, a));
                // Frobenius is a ring homomorphism
                assert_eq!(
                    f.frobenius_power(f.add(a, b), 1),
                    f.add(f.frobenius_power(a, 1), f.frobenius_power(b, 1))
                );
                assert_eq!(
                    f.frobenius_power(f.mul(a, b), 1),
                    f.mul(f.frobenius_power(a, 1), f.frobenius_power(b, 1))
                );
            }
        }
    }

    #[test]
    fn inverses_and_round_trips_exhaustive() {
        for (p, k) in [(2, 6), (3, 6), (2, 12), (7, 2), (3, 2)] {
            let f = Field::new(p, k).unwrap();
            for a in f.elements() {
                assert_eq!(f.decode(f.encode(a)).unwrap(), a);
                if !a.is_zero() {
                    assert_eq!(f.mul(f.inv(a).unwrap(), a), Elem::ONE);
                }
            }
            assert_eq!(f.inv(Elem::ZERO), Err(FieldError::DivisionByZero));
        }
    }

    #[test]
    fn frobenius_fixed_points_and_order() {
        let f = Field::new(2, 6).unwrap();
        let fixed = f
            .elements()
            .filter(|&a| f.frobenius_power(a, 1) == a)
            .count();
        assert_eq!(fixed, 2);
        for a in f.elements() {
            assert_eq!(f.frobenius_power(a, 6), a);
        }
        assert_eq!(f.frobenius_power(Elem::ZERO, 3), Elem::ZERO);
        assert_eq!(f.frobenius_power(Elem::ONE, 3), Elem::ONE);
        let g = Field::new(3, 6).unwrap();
        assert_eq!(
            g.elements()
                .filter(|&a| g.frobenius_power(a, 1) == a)
                .count(),
            3
        );
    }

    #[test]
    fn subfield_membership() {
        let f = Field::new(2, 6).unwrap();
        assert_eq!(
            f.elements()
                .filter(|&a| f.is_in_subfield(a, 2).unwrap())
                .count(),
            4
        );
        assert_eq!(
            f.elements()
                .filter(|&a| f.is_in_subfield(a, 3).unwrap())
                .count(),
            8
        );
        let g = f.primitive_element();
        for m in 1..=3 {
            assert!(!f.is_in_subfield(g, m).unwrap());
            assert!(f.is_in_subfield(Elem::ZERO, m).unwrap());
            assert!(f.is_in_subfield(Elem::ONE, m).unwrap());
        }
        assert_eq!(
            f.is_in_subfield(g, 4),
            Err(FieldError::NotSubfield { m: 4, n: 6 })
        );
    }

    #[test]
    fn embedding_is_an_injective_homomorphism() {
        let big = Field::new(2, 6).unwrap();
        for m in [1, 2, 3] {
            let small = Field::new(2, m).unwrap();
            let emb = SubfieldEmbedding::new(&small, &big).unwrap();
            let images: Vec<Elem> = small.elements().map(|a| emb.map(a)).collect();
            let mut sorted = images.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), small.order() as usize);
            for a in small.elements() {
                assert!(big.is_in_subfield(emb.map(a), m).unwrap());
                for b in small.elements() {
                    assert_eq!(emb.map(small.add(a, b)), big.add(emb.map(a), emb.map(b)));
                    assert_eq!(emb.map(small.mul(a, b)), big.mul(emb.map(a), emb.map(b)));
                }
            }
            assert_eq!(emb.map(Elem::ONE), Elem::ONE);
        }
        let gf4 = Field::new(2, 2).unwrap();
        let r = SubfieldEmbedding::new(&gf4, &big)
            .unwrap()
            .image_of_generator();
        // root of t^2 + t + 1, the smallest such
        assert_eq!(big.add(big.add(big.mul(r, r), r), Elem::ONE), Elem::ZERO);
        let roots: Vec<Elem> = big
            .elements()
            .filter(|&x| big.add(big.add(big.mul(x, x), x), Elem::ONE).is_zero())
            .collect();
        assert_eq!(roots.len(), 2);
        assert_eq!(r, roots[0]);
        let gf8 = Field::new(2, 3).unwrap();
        let gf16 = Field::new(2, 4).unwrap();
        assert!(SubfieldEmbedding::new(&gf8, &gf16).is_err());
    }

    #[test]
    fn checked_elements_reject_mismatch() {
        let f = Field::new(2, 6).unwrap();
        let g = Field::new(3, 2).unwrap();
        let a = FieldElement::decode(&f, 5).unwrap();
        let b = FieldElement::decode(&g, 5).unwrap();
        assert_eq!(a.add(&b), Err(FieldError::DescriptorMismatch));
        let zero = FieldElement::decode(&f, 0).unwrap();
        assert_eq!(a.div(&zero), Err(FieldError::DivisionByZero));
        assert_eq!(a.pow(-1).unwrap().mul(&a).unwrap().encode(), 1);
        assert_eq!(zero.pow(-2), Err(FieldError::DivisionByZero));
        let e = embed_subfield(
            &FieldElement::decode(&Field::new(2, 1).unwrap(), 1).unwrap(),
            &f,
        )
        .unwrap();
        assert_eq!(e.encode(), 1);
    }

    #[test]
    fn square_roots() {
        for (p, k) in [(2, 6), (3, 6)] {
            let f = Field::new(p, k).unwrap();
            for a in f.elements() {
                let s = f.mul(a, a);
                assert!(f.is_square(s));
                let r = f.sqrt(s).unwrap();
                assert_eq!(f.mul(r, r), s);
            }
        }
    }
}
