//! The field tower GF(p) ⊂ F = GF(q) ⊂ E = GF(q^m).
//!
//! E is realized as GF(p)[x]/(P) for a primitive polynomial P of degree k·m,
//! so the class of x is a primitive element β. Nonzero elements are stored by
//! their discrete logarithm to base β; addition goes through a Zech table
//! `zech[i] = log(1 + β^i)`. The subfield F is {0} ∪ {β^(s·n)}, n = (q^m−1)/(q−1).

use crate::error::{Error, Result};

/// Default ceiling on q^m − 1, the size of the log/antilog tables.
pub const DEFAULT_TABLE_LIMIT: u64 = 1 << 22;

const NONE: u32 = u32::MAX;

/// Parameters p, k, m of the tower, with q = p^k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldParams {
    p: u32,
    k: u32,
    m: u32,
    q: u64,
    n_units: u64,
}

impl FieldParams {
    pub fn new(p: u32, k: u32, m: u32) -> Result<Self> {
        Self::with_limit(p, k, m, DEFAULT_TABLE_LIMIT)
    }

    /// Like [`FieldParams::new`] with an explicit ceiling on q^m − 1.
    /// The ceiling itself can never exceed 2^31.
    pub fn with_limit(p: u32, k: u32, m: u32, limit: u64) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidParams(format!("p = {p} is not prime")));
        }
        if k == 0 || m == 0 {
            return Err(Error::InvalidParams("k and m must be positive".into()));
        }
        if m.is_multiple_of(p) {
            return Err(Error::InvalidParams(format!(
                "m = {m} is not prime to q = {p}^{k}"
            )));
        }
        let limit = limit.min(1 << 31);
        let q = (p as u64).checked_pow(k).ok_or(Error::TableTooLarge {
            size: u64::MAX,
            limit,
        })?;
        let size = q
            .checked_pow(m)
            .map(|v| v - 1)
            .ok_or(Error::TableTooLarge {
                size: u64::MAX,
                limit,
            })?;
        if size > limit {
            return Err(Error::TableTooLarge { size, limit });
        }
        Ok(FieldParams {
            p,
            k,
            m,
            q,
            n_units: size,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// q^m − 1, the order of E^×.
    pub fn n_units(&self) -> u64 {
        self.n_units
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of E: either zero or β^e with e reduced mod q^m − 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Felt(u32);

impl Felt {
    pub const ZERO: Felt = Felt(NONE);
    pub const ONE: Felt = Felt(0);

    pub fn is_zero(self) -> bool {
        self.0 == NONE
    }

    /// Discrete log to base β, `None` for zero.
    pub fn log(self) -> Option<u32> {
        (!self.is_zero()).then_some(self.0)
    }
}

impl std::fmt::Debug for Felt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.log() {
            None => write!(f, "0"),
            Some(e) => write!(f, "b^{e}"),
        }
    }
}

/// Minimal polynomial over F of an element of E; monic, coefficients low to high.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalPolynomial {
    pub coeffs: Vec<Felt>,
}

impl MinimalPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// Log/antilog realization of GF(p) ⊂ GF(q) ⊂ GF(q^m).
#[derive(Clone, Debug)]
pub struct TowerField {
    params: FieldParams,
    degree: usize,
    defining_poly: Vec<u32>,
    /// exponent -> base-p packed polynomial-basis vector
    exp: Vec<u32>,
    /// packed vector -> exponent (`NONE` at 0)
    log: Vec<u32>,
    zech: Vec<u32>,
    n: u32,
    subfield_step: u32,
}

impl TowerField {
    /// Builds E from the smallest primitive polynomial of degree k·m over GF(p),
    /// ordering candidates by Σ c_i p^i over their non-leading coefficients.
    pub fn new(params: FieldParams) -> Result<Self> {
        let degree = (params.k * params.m) as usize;
        let p = params.p;
        let span = (p as u64).pow(degree as u32);
        for low in 0..span {
            if low % p as u64 == 0 {
                continue;
            }
            let mut poly = unpack(low as u32, p, degree);
            poly.push(1);
            if let Some(exp) = power_table(&poly, p, params.n_units as u32) {
                return Self::from_tables(params, poly, exp);
            }
        }
        Err(Error::Internal(format!(
            "no primitive polynomial of degree {degree} over GF({p})"
        )))
    }

    /// Builds E from a caller-supplied defining polynomial (residues mod p,
    /// low to high), which must be monic of degree k·m and primitive.
    pub fn with_defining_poly(params: FieldParams, residues: &[u32]) -> Result<Self> {
        let degree = (params.k * params.m) as usize;
        if residues.len() != degree + 1 {
            return Err(Error::BadDefiningPolynomial(format!(
                "expected degree {degree}, got {} coefficients",
                residues.len()
            )));
        }
        if residues.iter().any(|&c| c >= params.p) {
            return Err(Error::BadDefiningPolynomial(
                "coefficient not a residue mod p".into(),
            ));
        }
        if residues[degree] != 1 {
            return Err(Error::BadDefiningPolynomial("not monic".into()));
        }
        let exp = power_table(residues, params.p, params.n_units as u32)
            .ok_or_else(|| Error::BadDefiningPolynomial("not primitive".into()))?;
        Self::from_tables(params, residues.to_vec(), exp)
    }

    fn from_tables(params: FieldParams, defining_poly: Vec<u32>, exp: Vec<u32>) -> Result<Self> {
        let n = params.n_units as u32;
        let p = params.p;
        let degree = defining_poly.len() - 1;
        let mut log = vec![NONE; n as usize + 1];
        for (i, &v) in exp.iter().enumerate() {
            log[v as usize] = i as u32;
        }
        let zech = exp
            .iter()
            .map(|&v| {
                let bumped = v - v % p + (v % p + 1) % p;
                log[bumped as usize]
            })
            .collect();
        let subfield_step = (params.n_units / (params.q - 1)) as u32;
        let field = TowerField {
            params,
            degree,
            defining_poly,
            exp,
            log,
            zech,
            n,
            subfield_step,
        };
        field.verify_subfield()?;
        Ok(field)
    }

    // 1 + β^(s·n) must land in F for every s; closure under addition follows.
    fn verify_subfield(&self) -> Result<()> {
        for s in 0..(self.params.q - 1) as u32 {
            let z = self.zech[(s * self.subfield_step) as usize];
            if z != NONE && !z.is_multiple_of(self.subfield_step) {
                return Err(Error::Internal("GF(q) is not closed under addition".into()));
            }
        }
        Ok(())
    }

    pub fn params(&self) -> &FieldParams {
        &self.params
    }

    pub fn p(&self) -> u32 {
        self.params.p
    }

    pub fn q(&self) -> u64 {
        self.params.q
    }

    pub fn m(&self) -> u32 {
        self.params.m
    }

    /// q^m − 1.
    pub fn order(&self) -> u32 {
        self.n
    }

    /// Defining polynomial of E over GF(p), residues low to high.
    pub fn defining_poly(&self) -> &[u32] {
        &self.defining_poly
    }

    /// (q^m − 1)/(q − 1); β raised to it generates F^×.
    pub fn subfield_step(&self) -> u32 {
        self.subfield_step
    }

    /// β^e for any integer e.
    pub fn beta_pow(&self, e: i64) -> Felt {
        Felt(e.rem_euclid(self.n as i64) as u32)
    }

    pub fn beta(&self) -> Felt {
        self.beta_pow(1)
    }

    /// The image of an integer in the prime field.
    pub fn from_int(&self, r: i64) -> Felt {
        let r = r.rem_euclid(self.params.p as i64) as u32;
        Felt(self.log[r as usize])
    }

    /// Polynomial-basis coordinates over GF(p), low to high.
    pub fn coords(&self, a: Felt) -> Vec<u32> {
        unpack(self.packed(a), self.params.p, self.degree)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<Felt> {
        let p = self.params.p;
        if coords.len() != self.degree || coords.iter().any(|&c| c >= p) {
            return Err(Error::InvalidArgument("bad coordinate vector".into()));
        }
        let packed = coords.iter().rev().fold(0u32, |acc, &c| acc * p + c);
        Ok(Felt(self.log[packed as usize]))
    }

    fn packed(&self, a: Felt) -> u32 {
        match a.log() {
            None => 0,
            Some(e) => self.exp[e as usize],
        }
    }

    pub fn add(&self, a: Felt, b: Felt) -> Felt {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let d = (b.0 + self.n - a.0) % self.n;
        match self.zech[d as usize] {
            NONE => Felt::ZERO,
            z => Felt(((a.0 as u64 + z as u64) % self.n as u64) as u32),
        }
    }

    pub fn neg(&self, a: Felt) -> Felt {
        if a.is_zero() || self.params.p == 2 {
            return a;
        }
        Felt((a.0 + self.n / 2) % self.n)
    }

    pub fn sub(&self, a: Felt, b: Felt) -> Felt {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Felt, b: Felt) -> Felt {
        if a.is_zero() || b.is_zero() {
            return Felt::ZERO;
        }
        Felt(((a.0 as u64 + b.0 as u64) % self.n as u64) as u32)
    }

    pub fn inv(&self, a: Felt) -> Result<Felt> {
        match a.log() {
            None => Err(Error::ZeroInverse),
            Some(e) => Ok(Felt((self.n - e) % self.n)),
        }
    }

    pub fn div(&self, a: Felt, b: Felt) -> Result<Felt> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a^e, with 0^0 = 1.
    pub fn pow(&self, a: Felt, e: u64) -> Felt {
        match a.log() {
            None if e == 0 => Felt::ONE,
            None => Felt::ZERO,
            Some(l) => Felt(((l as u128 * e as u128) % self.n as u128) as u32),
        }
    }

    /// Multiplication by an integer, i.e. by its image in GF(p).
    pub fn mul_int(&self, a: Felt, r: i64) -> Felt {
        self.mul(a, self.from_int(r))
    }

    /// x ↦ x^q, the generator of Gal(E/F).
    pub fn frobenius(&self, a: Felt) -> Felt {
        self.pow(a, self.params.q)
    }

    /// Tr_{E/F}(a) = Σ_{s<m} a^(q^s).
    pub fn trace(&self, a: Felt) -> Felt {
        let mut acc = Felt::ZERO;
        let mut c = a;
        for _ in 0..self.params.m {
            acc = self.add(acc, c);
            c = self.frobenius(c);
        }
        acc
    }

    pub fn in_subfield(&self, a: Felt) -> bool {
        a.is_zero() || a.0.is_multiple_of(self.subfield_step)
    }

    /// Canonical element of F for symbol s: 0 ↦ 0, s ↦ β^((s−1)·n).
    pub fn subfield_element(&self, s: u64) -> Result<Felt> {
        if s >= self.params.q {
            return Err(Error::SymbolOutOfRange {
                symbol: s,
                q: self.params.q,
            });
        }
        if s == 0 {
            return Ok(Felt::ZERO);
        }
        Ok(Felt((s as u32 - 1) * self.subfield_step))
    }

    pub fn subfield_index(&self, a: Felt) -> Result<u32> {
        match a.log() {
            None => Ok(0),
            Some(e) if e % self.subfield_step == 0 => Ok(e / self.subfield_step + 1),
            Some(_) => Err(Error::NotInSubfield),
        }
    }

    /// All q elements of F in symbol order.
    pub fn subfield_elements(&self) -> impl Iterator<Item = Felt> + '_ {
        (0..self.params.q).map(move |s| self.subfield_element(s).expect("in range"))
    }

    /// Nonzero elements of E in exponent order.
    pub fn units(&self) -> impl Iterator<Item = Felt> {
        (0..self.n).map(Felt)
    }

    /// Distinct Frobenius conjugates a, a^q, a^(q^2), ...
    pub fn conjugates(&self, a: Felt) -> Vec<Felt> {
        let mut out = vec![a];
        let mut c = self.frobenius(a);
        while c != a {
            out.push(c);
            c = self.frobenius(c);
        }
        out
    }

    /// Π (x − c) over the conjugates of a, checked to lie in F[x].
    pub fn minimal_polynomial(&self, a: Felt) -> Result<MinimalPolynomial> {
        if a.is_zero() {
            return Err(Error::InvalidArgument(
                "minimal polynomial requested for zero".into(),
            ));
        }
        let mut coeffs = vec![Felt::ONE];
        for c in self.conjugates(a) {
            coeffs = mul_linear(self, &coeffs, c);
        }
        if !coeffs.iter().all(|&c| self.in_subfield(c)) {
            return Err(Error::Internal("minimal polynomial left GF(q)".into()));
        }
        Ok(MinimalPolynomial { coeffs })
    }
}

/// Multiplies a polynomial over E by (x − root).
pub(crate) fn mul_linear(field: &TowerField, poly: &[Felt], root: Felt) -> Vec<Felt> {
    let neg_root = field.neg(root);
    let mut out = vec![Felt::ZERO; poly.len() + 1];
    for (i, &c) in poly.iter().enumerate() {
        out[i + 1] = field.add(out[i + 1], c);
        out[i] = field.add(out[i], field.mul(c, neg_root));
    }
    out
}

fn unpack(mut v: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(v % p);
        v /= p;
    }
    out
}

/// Successive powers of x modulo `poly` over GF(p), packed base p, if x has
/// order exactly `n`; `None` otherwise.
fn power_table(poly: &[u32], p: u32, n: u32) -> Option<Vec<u32>> {
    let degree = poly.len() - 1;
    if poly[0] == 0 {
        return None;
    }
    let top = p.pow(degree as u32 - 1);
    let mut table = Vec::with_capacity(n as usize);
    let mut cur = 1u32;
    let mut digits = vec![0u32; degree];
    for i in 0..n {
        if i > 0 && cur == 1 {
            return None;
        }
        table.push(cur);
        // cur * x: shift digits up, fold the overflow digit back through poly
        let overflow = cur / top;
        let shifted = (cur % top) * p;
        if overflow == 0 {
            cur = shifted;
            continue;
        }
        let mut v = shifted;
        for d in digits.iter_mut() {
            *d = v % p;
            v /= p;
        }
        for (d, &c) in digits.iter_mut().zip(poly) {
            *d = (*d + (p - c) * overflow) % p;
        }
        cur = digits.iter().rev().fold(0, |acc, &d| acc * p + d);
    }
    (cur == 1).then_some(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tower(p: u32, k: u32, m: u32) -> TowerField {
        TowerField::new(FieldParams::new(p, k, m).unwrap()).unwrap()
    }

    #[test]
    fn defining_polynomials() {
        assert_eq!(tower(2, 1, 3).defining_poly(), &[1, 1, 0, 1]);
        assert_eq!(tower(3, 1, 2).defining_poly(), &[2, 1, 1]);
    }

    #[test]
    fn rejects_m_not_prime_to_q() {
        assert!(matches!(
            FieldParams::new(2, 1, 2),
            Err(Error::InvalidParams(_))
        ));
        assert!(FieldParams::new(4, 1, 3).is_err());
        assert!(matches!(
            FieldParams::with_limit(2, 1, 9, 100),
            Err(Error::TableTooLarge { size: 511, .. })
        ));
    }

    #[test]
    fn non_primitive_override_rejected() {
        let params = FieldParams::new(3, 1, 2).unwrap();
        // x^2 + 1 is irreducible over GF(3) but x has order 4
        assert!(TowerField::with_defining_poly(params, &[1, 0, 1]).is_err());
        let f = TowerField::with_defining_poly(params, &[2, 2, 1]).unwrap();
        assert_eq!(f.defining_poly(), &[2, 2, 1]);
    }

    #[test]
    fn arithmetic_examples() {
        let f = tower(2, 1, 3);
        assert_eq!(f.mul(f.beta_pow(3), f.beta_pow(5)), f.beta());
        let g = tower(3, 1, 2);
        assert_eq!(g.add(g.beta_pow(1), g.beta_pow(3)), g.beta_pow(4));
        assert_eq!(g.beta_pow(4), g.from_int(2));
        assert_eq!(g.inv(Felt::ZERO), Err(Error::ZeroInverse));
    }

    #[test]
    fn trace_examples() {
        let f = tower(2, 1, 3);
        assert_eq!(f.trace(Felt::ONE), Felt::ONE);
        assert_eq!(f.trace(f.beta()), Felt::ZERO);
        let g = tower(3, 1, 2);
        assert_eq!(g.trace(g.beta_pow(4)), Felt::ONE);
    }

    #[test]
    fn subfield_symbols() {
        let g = tower(3, 1, 2);
        assert_eq!(g.subfield_element(0).unwrap(), Felt::ZERO);
        assert_eq!(g.subfield_element(2).unwrap(), g.beta_pow(4));
        assert_eq!(g.subfield_element(2).unwrap(), g.from_int(2));
        assert_eq!(g.subfield_index(g.beta()), Err(Error::NotInSubfield));
        assert!(g.subfield_element(3).is_err());
    }

    #[test]
    fn minimal_polynomial_examples() {
        let f = tower(2, 1, 3);
        let one = Felt::ONE;
        let z = Felt::ZERO;
        assert_eq!(
            f.minimal_polynomial(f.beta()).unwrap().coeffs,
            vec![one, one, z, one]
        );
        assert_eq!(
            f.minimal_polynomial(f.beta_pow(-1)).unwrap().coeffs,
            vec![one, z, one, one]
        );
        let g = tower(3, 1, 2);
        let two = g.from_int(2);
        assert_eq!(
            g.minimal_polynomial(g.beta_pow(7)).unwrap().coeffs,
            vec![two, two, one]
        );
        assert!(g.minimal_polynomial(Felt::ZERO).is_err());
    }

    #[test]
    fn frobenius_fixes_exactly_subfield() {
        for (p, k, m) in [(2, 1, 3), (3, 1, 2), (2, 2, 3), (5, 1, 2)] {
            let f = tower(p, k, m);
            for a in f.units() {
                assert_eq!(f.frobenius(a) == a, f.in_subfield(a));
            }
        }
    }
}
