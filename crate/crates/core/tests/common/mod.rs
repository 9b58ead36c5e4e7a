//! Test-only oracles that share no code path with the library: schoolbook
//! polynomial-basis arithmetic over GF(p), brute-force enumeration helpers.

#![allow(dead_code)]

use std::sync::Arc;

use orbitcode::{FieldParams, LocationSet, TowerField};

/// (p, k, m) grid used by the property and acceptance suites.
pub const GRID: [(u32, u32, u32); 6] = [
    (2, 1, 3),
    (2, 1, 5),
    (3, 1, 2),
    (3, 1, 4),
    (2, 2, 3),
    (5, 1, 2),
];

pub fn field(p: u32, k: u32, m: u32) -> Arc<TowerField> {
    Arc::new(TowerField::new(FieldParams::new(p, k, m).unwrap()).unwrap())
}

pub fn locations(f: &TowerField) -> Arc<LocationSet> {
    Arc::new(LocationSet::enumerate(f.params()))
}

/// GF(p)[x]/(modulus) by schoolbook multiplication and long division.
#[derive(Clone, Debug)]
pub struct NaiveField {
    pub p: u32,
    pub modulus: Vec<u32>,
}

impl NaiveField {
    pub fn new(p: u32, modulus: &[u32]) -> Self {
        NaiveField {
            p,
            modulus: modulus.to_vec(),
        }
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn zero(&self) -> Vec<u32> {
        vec![0; self.degree()]
    }

    pub fn one(&self) -> Vec<u32> {
        let mut v = self.zero();
        v[0] = 1;
        v
    }

    pub fn x(&self) -> Vec<u32> {
        let mut v = self.zero();
        if self.degree() > 1 {
            v[1] = 1;
            v
        } else {
            self.reduce(vec![0, 1])
        }
    }

    pub fn constant(&self, r: u32) -> Vec<u32> {
        let mut v = self.zero();
        v[0] = r % self.p;
        v
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    pub fn reduce(&self, mut v: Vec<u32>) -> Vec<u32> {
        let d = self.degree();
        let p = self.p;
        while v.len() > d {
            let top = v.pop().unwrap();
            let base = v.len() - d;
            for i in 0..d {
                v[base + i] = (v[base + i] + (p - self.modulus[i]) * top) % p;
            }
        }
        v.resize(d, 0);
        v
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        self.reduce(out)
    }

    pub fn pow(&self, a: &[u32], e: u64) -> Vec<u32> {
        let mut r = self.one();
        for _ in 0..e {
            r = self.mul(&r, a);
        }
        r
    }

    /// Multiplicative order of x, or None if x is not a unit of finite order
    /// returning to 1 within `limit` steps.
    pub fn order_of_x(&self, limit: u64) -> Option<u64> {
        let x = self.x();
        let mut cur = x.clone();
        for k in 1..=limit {
            if cur == self.one() {
                return Some(k);
            }
            cur = self.mul(&cur, &x);
        }
        None
    }
}

/// Smallest monic degree-D primitive polynomial over GF(p), candidates ordered
/// by Σ c_i p^i over the lower coefficients.
pub fn smallest_primitive(p: u32, degree: usize) -> Vec<u32> {
    let n = (p as u64).pow(degree as u32) - 1;
    for code in 0..(p as u64).pow(degree as u32) {
        let mut poly: Vec<u32> = (0..degree)
            .map(|i| ((code / (p as u64).pow(i as u32)) % p as u64) as u32)
            .collect();
        poly.push(1);
        if poly[0] == 0 {
            continue;
        }
        if NaiveField::new(p, &poly).order_of_x(n) == Some(n) {
            return poly;
        }
    }
    panic!("no primitive polynomial");
}

/// Mixed-radix odometer over `len` digits in 0..base.
pub fn all_vectors(base: u64, len: usize) -> impl Iterator<Item = Vec<u64>> {
    let total = base.pow(len as u32);
    (0..total).map(move |mut v| {
        (0..len)
            .map(|_| {
                let d = v % base;
                v /= base;
                d
            })
            .collect()
    })
}
