//! The code C(ρ, t) = {c ∈ F^L : c·Hᵀ = 0} with h_il = Σ_{j∈l} ρ(β^j)·β^(ij).
//!
//! The check matrix is built two ways: as the literal power sum, and from the
//! trace sequence b_j = Tr(β^j), which satisfies the linear recurrence given
//! by the minimal polynomial of β over F. The two must agree bit for bit.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::galois::{Felt, TowerField};
use crate::orbits::{LocationSet, Orbit};
use crate::polyring::{eval_raw, PolyF, PolyRing};

/// Whether to insist that ρ has no zero on E^× (needed for the distance bound).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RhoCheck {
    #[default]
    Enforce,
    Skip,
}

#[derive(Clone, Debug)]
pub struct CodeSpec {
    field: Arc<TowerField>,
    locations: Arc<LocationSet>,
    t: usize,
    rho: PolyF,
    distance_guarantee: bool,
}

impl CodeSpec {
    pub fn new(field: Arc<TowerField>, t: usize, rho: PolyF, check: RhoCheck) -> Result<Self> {
        let locations = Arc::new(LocationSet::enumerate(field.params()));
        Self::with_locations(field, locations, t, rho, check)
    }

    pub fn with_locations(
        field: Arc<TowerField>,
        locations: Arc<LocationSet>,
        t: usize,
        rho: PolyF,
        check: RhoCheck,
    ) -> Result<Self> {
        let n = field.order() as usize;
        if t == 0 || t + 2 > n {
            return Err(Error::InvalidCode(format!(
                "t = {t} outside 1..={}",
                n.saturating_sub(2)
            )));
        }
        if rho.is_zero() {
            return Err(Error::InvalidCode("rho is the zero polynomial".into()));
        }
        if rho.coeffs().iter().any(|&c| !field.in_subfield(c)) {
            return Err(Error::NotInSubfield);
        }
        if locations.modulus() != field.order() {
            return Err(Error::InvalidCode(
                "location set built for another field".into(),
            ));
        }
        let distance_guarantee = match check {
            RhoCheck::Enforce => {
                if let Some(j) = PolyRing::new(&field).find_unit_root(&rho) {
                    return Err(Error::HasRoot { exponent: j });
                }
                true
            }
            RhoCheck::Skip => false,
        };
        Ok(CodeSpec {
            field,
            locations,
            t,
            rho,
            distance_guarantee,
        })
    }

    pub fn field(&self) -> &TowerField {
        &self.field
    }

    pub fn field_arc(&self) -> &Arc<TowerField> {
        &self.field
    }

    pub fn locations(&self) -> &LocationSet {
        &self.locations
    }

    pub fn locations_arc(&self) -> &Arc<LocationSet> {
        &self.locations
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn rho(&self) -> &PolyF {
        &self.rho
    }

    /// True when ρ was verified nonvanishing on E^×.
    pub fn distance_guarantee(&self) -> bool {
        self.distance_guarantee
    }

    /// Code length |L|.
    pub fn length(&self) -> usize {
        self.locations.len()
    }

    /// ρ(β^j) for j = 0..q^m−2.
    pub fn rho_values(&self) -> Vec<Felt> {
        let f = &*self.field;
        f.units()
            .map(|b| eval_raw(f, self.rho.coeffs(), b))
            .collect()
    }
}

/// A t × |L| matrix over F, columns in canonical orbit order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckMatrix {
    rows: Vec<Vec<Felt>>,
}

impl CheckMatrix {
    pub fn from_rows(rows: Vec<Vec<Felt>>) -> Self {
        CheckMatrix { rows }
    }

    pub fn t(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn rows(&self) -> &[Vec<Felt>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, l: usize) -> Felt {
        self.rows[i][l]
    }

    pub fn column(&self, l: usize) -> Vec<Felt> {
        self.rows.iter().map(|r| r[l]).collect()
    }

    pub fn symbols(&self, field: &TowerField) -> Vec<Vec<u32>> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&e| field.subfield_index(e).expect("entry in F"))
                    .collect()
            })
            .collect()
    }

    /// Text dump: one line of space-separated symbols per row.
    pub fn dump(&self, field: &TowerField) -> String {
        let mut out = String::new();
        for row in self.symbols(field) {
            let line: Vec<String> = row.iter().map(u32::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

pub fn build_check_matrix_direct(spec: &CodeSpec) -> Result<CheckMatrix> {
    let f = spec.field();
    let rho_at = spec.rho_values();
    let mut rows = vec![Vec::with_capacity(spec.length()); spec.t];
    for orbit in spec.locations().orbits() {
        for (i, row) in rows.iter_mut().enumerate() {
            let h = orbit.members().iter().fold(Felt::ZERO, |acc, &j| {
                let term = f.mul(rho_at[j as usize], f.beta_pow(i as i64 * j as i64));
                f.add(acc, term)
            });
            if !f.in_subfield(h) {
                return Err(Error::Internal(format!(
                    "h[{i}][{}] = {h:?} is not in GF(q)",
                    orbit.rep()
                )));
            }
            row.push(h);
        }
    }
    Ok(CheckMatrix { rows })
}

/// One period of b_j = Tr(β^j).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceSequence {
    values: Vec<Felt>,
}

impl TraceSequence {
    /// b_j with j reduced mod q^m − 1.
    pub fn get(&self, j: u64) -> Felt {
        self.values[(j % self.values.len() as u64) as usize]
    }

    pub fn values(&self) -> &[Felt] {
        &self.values
    }

    pub fn symbols(&self, field: &TowerField) -> Vec<u32> {
        self.values
            .iter()
            .map(|&v| field.subfield_index(v).expect("trace in F"))
            .collect()
    }
}

/// Seeds with m direct traces, extends by
/// b_j = −(f_0 b_{j−m} + … + f_{m−1} b_{j−1}), then checks the whole period
/// against direct traces.
pub fn build_trace_sequence(field: &TowerField) -> Result<TraceSequence> {
    let n = field.order() as usize;
    let m = field.m() as usize;
    let f = field.minimal_polynomial(field.beta())?.coeffs;
    if f.len() != m + 1 {
        return Err(Error::Internal(
            "minimal polynomial of beta has wrong degree".into(),
        ));
    }
    let mut values = Vec::with_capacity(n);
    for j in 0..m.min(n) {
        values.push(field.trace(field.beta_pow(j as i64)));
    }
    for j in m..n {
        let s = (0..m).fold(Felt::ZERO, |acc, u| {
            field.add(acc, field.mul(f[u], values[j - m + u]))
        });
        values.push(field.neg(s));
    }
    for (j, &b) in values.iter().enumerate() {
        if b != field.trace(field.beta_pow(j as i64)) {
            return Err(Error::Internal(format!(
                "trace recurrence diverges at j = {j}"
            )));
        }
    }
    Ok(TraceSequence { values })
}

/// h_il = (|l|/m)·Σ_u ρ_u b_{j(i+u)} for a chosen member j of l.
pub fn lfsr_entry(spec: &CodeSpec, trace: &TraceSequence, i: usize, orbit: &Orbit, j: u32) -> Felt {
    let f = spec.field();
    // |l|/m realized as the inverse of m/|l| in GF(p)
    let ratio = spec.field().m() as i64 / orbit.size() as i64;
    let scale = f.inv(f.from_int(ratio)).expect("m/|l| is prime to p");
    let sum = spec.rho().support().fold(Felt::ZERO, |acc, u| {
        let b = trace.get(j as u64 * (i + u) as u64);
        f.add(acc, f.mul(spec.rho().coeff(u), b))
    });
    f.mul(scale, sum)
}

/// Check matrix from the trace sequence, using j = rep(l) in each column.
pub fn build_check_matrix_lfsr(spec: &CodeSpec) -> Result<CheckMatrix> {
    let trace = build_trace_sequence(spec.field())?;
    Ok(check_matrix_from_trace(spec, &trace))
}

pub fn check_matrix_from_trace(spec: &CodeSpec, trace: &TraceSequence) -> CheckMatrix {
    let rows = (0..spec.t)
        .map(|i| {
            spec.locations()
                .orbits()
                .iter()
                .map(|o| lfsr_entry(spec, trace, i, o, o.rep()))
                .collect()
        })
        .collect();
    CheckMatrix { rows }
}

/// A vector in F^L, coordinates in canonical orbit order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Felt>);

impl Word {
    pub fn zero(len: usize) -> Self {
        Word(vec![Felt::ZERO; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn from_symbols(field: &TowerField, symbols: &[u32]) -> Result<Self> {
        symbols
            .iter()
            .map(|&s| field.subfield_element(s as u64))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn symbols(&self, field: &TowerField) -> Vec<u32> {
        self.0
            .iter()
            .map(|&c| field.subfield_index(c).expect("coordinate in F"))
            .collect()
    }

    /// Indices of nonzero coordinates.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len())
            .filter(|&i| !self.0[i].is_zero())
            .collect()
    }

    pub fn hamming_weight(&self) -> usize {
        self.0.iter().filter(|c| !c.is_zero()).count()
    }

    /// Σ |l| over the support.
    pub fn degree_weight(&self, locations: &LocationSet) -> usize {
        self.support()
            .iter()
            .map(|&l| locations.get(l).size())
            .sum()
    }

    pub fn add(&self, field: &TowerField, other: &Word) -> Word {
        Word(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| field.add(a, b))
                .collect(),
        )
    }

    pub fn sub(&self, field: &TowerField, other: &Word) -> Word {
        Word(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| field.sub(a, b))
                .collect(),
        )
    }
}

/// Null-space basis of H.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub rank: usize,
    pub basis: Vec<Word>,
}

impl Generator {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Reduced row echelon form over the field; returns pivot columns.
pub(crate) fn row_reduce(field: &TowerField, rows: &mut Vec<Vec<Felt>>) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = field.inv(rows[r][c]).expect("pivot nonzero");
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = field.neg(row[c]);
            for (x, &p) in row.iter_mut().zip(&pivot_row) {
                *x = field.add(*x, field.mul(factor, p));
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(pivots.len());
    pivots
}

/// Rank of H and a basis of its null space, one vector per free column
/// (ascending), with a 1 in that column.
pub fn generator_matrix(spec: &CodeSpec, h: &CheckMatrix) -> Generator {
    let f = spec.field();
    let cols = spec.length();
    let mut rref = h.rows.clone();
    let pivots = row_reduce(f, &mut rref);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Felt::ZERO; cols];
        v[free] = Felt::ONE;
        for (row, &pc) in rref.iter().zip(&pivots) {
            v[pc] = f.neg(row[free]);
        }
        basis.push(Word(v));
    }
    Generator {
        rank: pivots.len(),
        basis,
    }
}

/// Σ message_i · basis_i.
pub fn encode(spec: &CodeSpec, generator: &Generator, message: &[Felt]) -> Result<Word> {
    if message.len() != generator.dimension() {
        return Err(Error::LengthMismatch {
            expected: generator.dimension(),
            got: message.len(),
        });
    }
    let f = spec.field();
    let mut out = Word::zero(spec.length());
    for (&coef, row) in message.iter().zip(&generator.basis) {
        if !f.in_subfield(coef) {
            return Err(Error::NotInSubfield);
        }
        for (o, &x) in out.0.iter_mut().zip(&row.0) {
            *o = f.add(*o, f.mul(coef, x));
        }
    }
    Ok(out)
}

/// r·Hᵀ.
pub fn syndrome_of(field: &TowerField, h: &CheckMatrix, r: &Word) -> Result<Vec<Felt>> {
    if r.len() != h.cols() {
        return Err(Error::LengthMismatch {
            expected: h.cols(),
            got: r.len(),
        });
    }
    Ok(h.rows
        .iter()
        .map(|row| {
            row.iter()
                .zip(&r.0)
                .fold(Felt::ZERO, |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
        })
        .collect())
}

/// A spec together with its check matrix and generator.
#[derive(Clone, Debug)]
pub struct Code {
    pub spec: CodeSpec,
    pub h: CheckMatrix,
    pub generator: Generator,
}

impl Code {
    pub fn new(spec: CodeSpec) -> Result<Self> {
        let h = build_check_matrix_direct(&spec)?;
        let generator = generator_matrix(&spec, &h);
        Ok(Code { spec, h, generator })
    }

    pub fn dimension(&self) -> usize {
        self.generator.dimension()
    }

    pub fn encode(&self, message: &[Felt]) -> Result<Word> {
        encode(&self.spec, &self.generator, message)
    }

    pub fn is_codeword(&self, w: &Word) -> Result<bool> {
        Ok(syndrome_of(self.spec.field(), &self.h, w)?
            .iter()
            .all(|s| s.is_zero()))
    }
}
