//! Dense polynomials over F = GF(q).
//!
//! Coefficients are [`Felt`] values lying in F, stored low to high with no
//! trailing zeros. Arithmetic needs the field tables, so it lives on
//! [`PolyRing`], a borrowed view of a [`TowerField`].

use crate::error::{Error, Result};
use crate::galois::{Felt, MinimalPolynomial, TowerField};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyF {
    coeffs: Vec<Felt>,
}

impl PolyF {
    pub fn zero() -> Self {
        PolyF { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PolyF {
            coeffs: vec![Felt::ONE],
        }
    }

    pub fn x() -> Self {
        PolyF {
            coeffs: vec![Felt::ZERO, Felt::ONE],
        }
    }

    /// c·x^d.
    pub fn monomial(c: Felt, d: usize) -> Self {
        let mut coeffs = vec![Felt::ZERO; d + 1];
        coeffs[d] = c;
        Self::from_raw(coeffs)
    }

    /// Trims trailing zeros; the caller vouches that coefficients lie in F.
    pub(crate) fn from_raw(mut coeffs: Vec<Felt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyF { coeffs }
    }

    pub fn coeffs(&self) -> &[Felt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Felt {
        self.coeffs.get(i).copied().unwrap_or(Felt::ZERO)
    }

    pub fn leading(&self) -> Felt {
        self.coeffs.last().copied().unwrap_or(Felt::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Felt::ONE
    }

    /// Exponents carrying a nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
    }
}

impl std::fmt::Debug for PolyF {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PolyF{:?}", self.coeffs)
    }
}

impl From<MinimalPolynomial> for PolyF {
    fn from(m: MinimalPolynomial) -> Self {
        PolyF::from_raw(m.coeffs)
    }
}

/// Comma-separated symbols, e.g. "1,0,2,1".
pub fn format_symbols(symbols: &[u32]) -> String {
    symbols
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

pub fn parse_symbols(text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad symbol {s:?}")))
        })
        .collect()
}

/// F[x] over a given tower.
#[derive(Clone, Copy)]
pub struct PolyRing<'a> {
    field: &'a TowerField,
}

impl<'a> PolyRing<'a> {
    pub fn new(field: &'a TowerField) -> Self {
        PolyRing { field }
    }

    pub fn field(&self) -> &'a TowerField {
        self.field
    }

    /// Polynomial with coefficients checked for membership in F.
    pub fn poly(&self, coeffs: Vec<Felt>) -> Result<PolyF> {
        if coeffs.iter().any(|&c| !self.field.in_subfield(c)) {
            return Err(Error::NotInSubfield);
        }
        Ok(PolyF::from_raw(coeffs))
    }

    pub fn from_symbols(&self, symbols: &[u32]) -> Result<PolyF> {
        let coeffs = symbols
            .iter()
            .map(|&s| self.field.subfield_element(s as u64))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyF::from_raw(coeffs))
    }

    pub fn to_symbols(&self, a: &PolyF) -> Vec<u32> {
        a.coeffs
            .iter()
            .map(|&c| self.field.subfield_index(c).expect("coefficient in F"))
            .collect()
    }

    pub fn constant(&self, c: Felt) -> PolyF {
        PolyF::from_raw(vec![c])
    }

    pub fn add(&self, a: &PolyF, b: &PolyF) -> PolyF {
        let f = self.field;
        let len = a.coeffs.len().max(b.coeffs.len());
        PolyF::from_raw((0..len).map(|i| f.add(a.coeff(i), b.coeff(i))).collect())
    }

    pub fn sub(&self, a: &PolyF, b: &PolyF) -> PolyF {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &PolyF) -> PolyF {
        self.scale(a, self.field.neg(Felt::ONE))
    }

    pub fn scale(&self, a: &PolyF, c: Felt) -> PolyF {
        PolyF::from_raw(a.coeffs.iter().map(|&x| self.field.mul(x, c)).collect())
    }

    /// a·x^k.
    pub fn shift(&self, a: &PolyF, k: usize) -> PolyF {
        if a.is_zero() {
            return PolyF::zero();
        }
        let mut coeffs = vec![Felt::ZERO; k];
        coeffs.extend_from_slice(&a.coeffs);
        PolyF { coeffs }
    }

    pub fn mul(&self, a: &PolyF, b: &PolyF) -> PolyF {
        PolyF::from_raw(mul_raw(self.field, &a.coeffs, &b.coeffs))
    }

    /// a mod x^k.
    pub fn truncate(&self, a: &PolyF, k: usize) -> PolyF {
        PolyF::from_raw(a.coeffs.iter().take(k).copied().collect())
    }

    pub fn divrem(&self, a: &PolyF, b: &PolyF) -> Result<(PolyF, PolyF)> {
        let f = self.field;
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(b.leading())?;
        let mut rem = a.coeffs.clone();
        if rem.len() <= db {
            return Ok((PolyF::zero(), a.clone()));
        }
        let mut quot = vec![Felt::ZERO; rem.len() - db];
        for i in (db..rem.len()).rev() {
            let c = f.mul(rem[i], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[i - db] = c;
            let neg_c = f.neg(c);
            for (j, &bc) in b.coeffs.iter().enumerate() {
                let k = i - db + j;
                rem[k] = f.add(rem[k], f.mul(neg_c, bc));
            }
        }
        rem.truncate(db);
        Ok((PolyF::from_raw(quot), PolyF::from_raw(rem)))
    }

    pub fn rem(&self, a: &PolyF, b: &PolyF) -> Result<PolyF> {
        Ok(self.divrem(a, b)?.1)
    }

    /// True when `d` divides `a`. The zero polynomial divides only zero.
    pub fn divides(&self, d: &PolyF, a: &PolyF) -> bool {
        if d.is_zero() {
            return a.is_zero();
        }
        self.rem(a, d).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Splits `a` as lead·monic; the zero polynomial maps to (0, 0).
    pub fn monic(&self, a: &PolyF) -> (Felt, PolyF) {
        if a.is_zero() {
            return (Felt::ZERO, PolyF::zero());
        }
        let lead = a.leading();
        let inv = self.field.inv(lead).expect("nonzero leading coefficient");
        (lead, self.scale(a, inv))
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, a: &PolyF, b: &PolyF) -> PolyF {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.rem(&x, &y).expect("nonzero divisor");
            x = y;
            y = r;
        }
        self.monic(&x).1
    }

    /// (d, u, v) with u·a + v·b = d and d the monic gcd.
    pub fn xgcd(&self, a: &PolyF, b: &PolyF) -> (PolyF, PolyF, PolyF) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut u0, mut u1) = (PolyF::one(), PolyF::zero());
        let (mut v0, mut v1) = (PolyF::zero(), PolyF::one());
        while !r1.is_zero() {
            let (quot, rem) = self.divrem(&r0, &r1).expect("nonzero divisor");
            let u2 = self.sub(&u0, &self.mul(&quot, &u1));
            let v2 = self.sub(&v0, &self.mul(&quot, &v1));
            r0 = std::mem::replace(&mut r1, rem);
            u0 = std::mem::replace(&mut u1, u2);
            v0 = std::mem::replace(&mut v1, v2);
        }
        if r0.is_zero() {
            return (r0, u0, v0);
        }
        let inv = self.field.inv(r0.leading()).expect("nonzero");
        (
            self.scale(&r0, inv),
            self.scale(&u0, inv),
            self.scale(&v0, inv),
        )
    }

    /// Inverse of `a` modulo `modulus`.
    pub fn inverse_mod(&self, a: &PolyF, modulus: &PolyF) -> Result<PolyF> {
        if modulus.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (d, u, _) = self.xgcd(a, modulus);
        if d != PolyF::one() {
            return Err(Error::NotCoprime);
        }
        self.rem(&u, modulus)
    }

    /// The unique h with deg h < q^m − 1 and h·g ≡ 1 mod x^(q^m−1) − 1.
    pub fn inverse_mod_cyclic(&self, g: &PolyF) -> Result<PolyF> {
        let n = self.field.order() as usize;
        let mut cyclic = PolyF::monomial(Felt::ONE, n);
        cyclic.coeffs[0] = self.field.neg(Felt::ONE);
        let modulus = PolyF::from_raw(cyclic.coeffs);
        if let Some(j) = self.find_unit_root(g) {
            return Err(Error::HasRoot { exponent: j });
        }
        self.inverse_mod(g, &modulus)
    }

    /// Smallest j with g(β^j) = 0, if any.
    pub fn find_unit_root(&self, g: &PolyF) -> Option<u32> {
        let f = self.field;
        (0..f.order()).find(|&j| self.eval(g, f.beta_pow(j as i64)).is_zero())
    }

    /// Formal derivative.
    pub fn derivative(&self, a: &PolyF) -> PolyF {
        let f = self.field;
        PolyF::from_raw(
            a.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul_int(c, i as i64))
                .collect(),
        )
    }

    /// Horner evaluation at a point of E.
    pub fn eval(&self, a: &PolyF, point: Felt) -> Felt {
        eval_raw(self.field, &a.coeffs, point)
    }

    /// base^e mod modulus.
    pub fn pow_mod(&self, base: &PolyF, mut e: u64, modulus: &PolyF) -> Result<PolyF> {
        let mut result = self.rem(&PolyF::one(), modulus)?;
        let mut b = self.rem(base, modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                result = self.rem(&self.mul(&result, &b), modulus)?;
            }
            b = self.rem(&self.mul(&b, &b), modulus)?;
            e >>= 1;
        }
        Ok(result)
    }

    /// Ben-Or test: no gcd(x^(q^i) − x, a) is nontrivial for i ≤ deg/2.
    pub fn is_irreducible(&self, a: &PolyF) -> bool {
        let Some(deg) = a.degree() else { return false };
        if deg == 0 {
            return false;
        }
        let x = PolyF::x();
        let q = self.field.q();
        let mut power = self.rem(&x, a).expect("nonzero");
        for _ in 0..deg / 2 {
            power = self.pow_mod(&power, q, a).expect("nonzero");
            let g = self.gcd(&self.sub(&power, &x), a);
            if g != PolyF::one() {
                return false;
            }
        }
        true
    }

    /// Monic polynomial of degree `t` whose lower coefficient symbols are the
    /// base-q digits of `index`, constant term least significant.
    pub fn monic_by_index(&self, t: usize, mut index: u64) -> PolyF {
        let q = self.field.q();
        let mut coeffs = Vec::with_capacity(t + 1);
        for _ in 0..t {
            coeffs.push(self.field.subfield_element(index % q).expect("digit < q"));
            index /= q;
        }
        coeffs.push(Felt::ONE);
        PolyF::from_raw(coeffs)
    }

    /// Monic irreducibles of degree `t`, ordered as in [`PolyRing::monic_by_index`].
    pub fn enumerate_irreducible(&self, t: usize) -> impl Iterator<Item = PolyF> + 'a {
        let ring = *self;
        let count = self.field.q().saturating_pow(t as u32);
        (0..count)
            .map(move |i| ring.monic_by_index(t, i))
            .filter(move |g| ring.is_irreducible(g))
    }

    /// ρ(X⁻¹) mod `modulus`, with X⁻¹ the inverse of x modulo `modulus`.
    pub fn eval_at_inverse_mod(&self, a: &PolyF, modulus: &PolyF) -> Result<PolyF> {
        if modulus.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if modulus.coeff(0).is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let x_inv = self.inverse_mod(&PolyF::x(), modulus)?;
        let mut acc = PolyF::zero();
        for &c in a.coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, &x_inv), &self.constant(c));
            acc = self.rem(&acc, modulus)?;
        }
        Ok(acc)
    }
}

pub(crate) fn mul_raw(f: &TowerField, a: &[Felt], b: &[Felt]) -> Vec<Felt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Felt::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

pub(crate) fn eval_raw(f: &TowerField, a: &[Felt], point: Felt) -> Felt {
    a.iter()
        .rev()
        .fold(Felt::ZERO, |acc, &c| f.add(f.mul(acc, point), c))
}
