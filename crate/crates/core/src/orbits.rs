//! The location set L: orbits of Z/(q^m − 1) under j ↦ q·j.
//!
//! Orbits are listed by ascending minimum member. That order is the column
//! order of every check matrix and the coordinate order of every word.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::galois::FieldParams;

/// One cyclotomic orbit, i.e. one code coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orbit {
    members: Vec<u32>,
}

impl Orbit {
    /// Canonical representative, the smallest member.
    pub fn rep(&self) -> u32 {
        self.members[0]
    }

    /// Members in ascending order.
    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, j: u32) -> bool {
        self.members.binary_search(&j).is_ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocationSet {
    modulus: u32,
    orbits: Vec<Orbit>,
    index: Vec<u32>,
}

impl LocationSet {
    pub fn enumerate(params: &FieldParams) -> Self {
        let n = params.n_units() as u32;
        let q = params.q() % n.max(1) as u64;
        let mut index = vec![u32::MAX; n as usize];
        let mut orbits = Vec::new();
        for start in 0..n {
            if index[start as usize] != u32::MAX {
                continue;
            }
            let id = orbits.len() as u32;
            let mut members = Vec::new();
            let mut j = start;
            loop {
                index[j as usize] = id;
                members.push(j);
                j = ((j as u64 * q) % n as u64) as u32;
                if j == start {
                    break;
                }
            }
            members.sort_unstable();
            orbits.push(Orbit { members });
        }
        LocationSet {
            modulus: n,
            orbits,
            index,
        }
    }

    /// |L|.
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    /// q^m − 1.
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn get(&self, idx: usize) -> &Orbit {
        &self.orbits[idx]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Orbit::size).collect()
    }

    /// Coordinate index of the orbit containing `exponent`.
    pub fn index_of(&self, exponent: u64) -> Result<usize> {
        if exponent >= self.modulus as u64 {
            return Err(Error::OutOfRange {
                exponent,
                modulus: self.modulus as u64,
            });
        }
        Ok(self.index[exponent as usize] as usize)
    }

    pub fn orbit_of(&self, exponent: u64) -> Result<&Orbit> {
        Ok(&self.orbits[self.index_of(exponent)?])
    }

    /// Index of the coordinate with the given representative.
    pub fn index_of_rep(&self, rep: u32) -> Option<usize> {
        self.orbits.binary_search_by_key(&rep, Orbit::rep).ok()
    }

    /// Index of the orbit {−j : j ∈ l}.
    pub fn negated_index(&self, idx: usize) -> usize {
        let rep = self.orbits[idx].rep();
        let neg = (self.modulus - rep) % self.modulus;
        self.index[neg as usize] as usize
    }
}

/// Möbius function by trial factorization.
pub fn mobius(mut n: u64) -> i32 {
    let mut result = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn divisors(n: u64) -> impl Iterator<Item = u64> {
    (1..=n).filter(move |d| n.is_multiple_of(*d))
}

/// |L| = Σ_{d|m} (1/d) Σ_{e|d} μ(e)(q^(d/e) − 1), in exact arithmetic.
pub fn count_orbits_closed_form(params: &FieldParams) -> Result<BigUint> {
    let q = BigInt::from(params.q());
    let mut total = BigInt::zero();
    for d in divisors(params.m() as u64) {
        let mut inner = BigInt::zero();
        for e in divisors(d) {
            let term = q.pow((d / e) as u32) - 1;
            inner += term * mobius(e);
        }
        let d = BigInt::from(d);
        if !(&inner % &d).is_zero() {
            return Err(Error::Internal(format!(
                "inner orbit sum {inner} not divisible by {d}"
            )));
        }
        total += inner / d;
    }
    total
        .to_biguint()
        .ok_or_else(|| Error::Internal("negative orbit count".into()))
}

/// Both sides of (q^m − 1)/m ≤ |L| < (q^m − 1)/m + (1 − 1/m)·q^(m/2+1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitCountBounds {
    pub count: BigUint,
    pub lower_holds: bool,
    pub upper_holds: bool,
}

pub fn check_orbit_count_bounds(params: &FieldParams) -> Result<OrbitCountBounds> {
    let count = count_orbits_closed_form(params)?;
    let m = BigInt::from(params.m());
    let q = BigInt::from(params.q());
    let units = q.pow(params.m()) - BigInt::one();
    // slack = m·|L| − (q^m − 1); upper bound is slack < (m − 1)·q·q^(m/2)
    let slack = &m * BigInt::from(count.clone()) - &units;
    let lower_holds = !slack.is_negative();
    let upper_holds = if slack.is_negative() {
        true
    } else {
        let coeff = (&m - 1) * &q;
        let rhs_sq = &coeff * &coeff * q.pow(params.m());
        &slack * &slack < rhs_sq
    };
    Ok(OrbitCountBounds {
        count,
        lower_holds,
        upper_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(p: u32, k: u32, m: u32) -> LocationSet {
        LocationSet::enumerate(&FieldParams::new(p, k, m).unwrap())
    }

    fn members(l: &LocationSet) -> Vec<Vec<u32>> {
        l.orbits().iter().map(|o| o.members().to_vec()).collect()
    }

    #[test]
    fn small_location_sets() {
        assert_eq!(
            members(&set(2, 1, 3)),
            vec![vec![0], vec![1, 2, 4], vec![3, 5, 6]]
        );
        let l = set(3, 1, 2);
        assert_eq!(
            members(&l),
            vec![vec![0], vec![1, 3], vec![2, 6], vec![4], vec![5, 7]]
        );
        assert_eq!(l.sizes(), vec![1, 2, 2, 1, 2]);
        let l = set(2, 1, 5);
        assert_eq!(l.len(), 7);
        assert_eq!(l.sizes().iter().filter(|&&s| s == 5).count(), 6);
    }

    #[test]
    fn closed_form_examples() {
        for ((p, k, m), expect) in [((2, 1, 3), 3u32), ((3, 1, 2), 5), ((2, 1, 5), 7)] {
            let params = FieldParams::new(p, k, m).unwrap();
            assert_eq!(
                count_orbits_closed_form(&params).unwrap(),
                BigUint::from(expect)
            );
        }
    }

    #[test]
    fn bounds_examples() {
        for (p, k, m) in [(3, 1, 2), (2, 1, 3)] {
            let b = check_orbit_count_bounds(&FieldParams::new(p, k, m).unwrap()).unwrap();
            assert!(b.lower_holds && b.upper_holds);
        }
    }

    #[test]
    fn orbit_lookup() {
        let l = set(3, 1, 2);
        assert_eq!(l.orbit_of(6).unwrap().members(), &[2, 6]);
        assert_eq!(set(2, 1, 3).orbit_of(0).unwrap().members(), &[0]);
        assert!(matches!(l.orbit_of(8), Err(Error::OutOfRange { .. })));
        assert_eq!(l.index_of_rep(4), Some(3));
        assert_eq!(l.index_of_rep(3), None);
    }

    #[test]
    fn mobius_values() {
        let expect = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (i, &mu) in expect.iter().enumerate() {
            assert_eq!(mobius(i as u64 + 1), mu, "mu({})", i + 1);
        }
    }

    #[test]
    fn negation_maps_orbits_to_orbits() {
        for (p, k, m) in [(2, 1, 5), (3, 1, 4), (2, 2, 3), (5, 1, 2)] {
            let l = set(p, k, m);
            let n = l.modulus();
            for (idx, orbit) in l.orbits().iter().enumerate() {
                let mut neg: Vec<u32> = orbit.members().iter().map(|&j| (n - j) % n).collect();
                neg.sort_unstable();
                assert_eq!(l.get(l.negated_index(idx)).members(), &neg[..]);
            }
        }
    }
}
