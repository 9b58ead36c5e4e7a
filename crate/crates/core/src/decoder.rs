//! Bounded-distance decoding up to degree-weight ⌊t/2⌋.
//!
//! Pipeline: syndromes → shortest linear recurrence λ (λ(0) = 1) with
//! ω = λ·S mod x^t → error support E = {l : p_l | λ} → error values by
//! residues modulo each p_l → verification. The support is found by trial
//! division against the minimal polynomials p_l of β^(−rep l); λ is never
//! evaluated at field points.

use std::collections::HashMap;

use thiserror::Error;

use crate::code::{syndrome_of, CheckMatrix, Code, CodeSpec, Word};
use crate::error::Result;
use crate::galois::{Felt, TowerField};
use crate::orbits::LocationSet;
use crate::polyring::{PolyF, PolyRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecodeStage {
    /// deg ω > deg λ.
    KeyEquation,
    /// deg λ exceeds ⌊t/2⌋.
    Radius,
    /// λ does not split into distinct p_l.
    Locate,
    /// A residue was non-invertible, non-constant or zero.
    Values,
    /// The corrected word failed the final syndrome/degree check.
    Verification,
}

impl std::fmt::Display for DecodeStage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            DecodeStage::KeyEquation => "key-equation",
            DecodeStage::Radius => "radius",
            DecodeStage::Locate => "locate",
            DecodeStage::Values => "values",
            DecodeStage::Verification => "verification",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("received word has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("uncorrectable at stage {stage}: {detail}")]
    Uncorrectable { stage: DecodeStage, detail: String },
}

impl DecodeError {
    fn at(stage: DecodeStage, detail: impl Into<String>) -> Self {
        DecodeError::Uncorrectable {
            stage,
            detail: detail.into(),
        }
    }

    pub fn stage(&self) -> Option<DecodeStage> {
        match self {
            DecodeError::Uncorrectable { stage, .. } => Some(*stage),
            DecodeError::LengthMismatch { .. } => None,
        }
    }
}

/// (S_0, …, S_{t−1}) = r·Hᵀ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyndromeVector(pub Vec<Felt>);

impl SyndromeVector {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|s| s.is_zero())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_poly(&self) -> PolyF {
        PolyF::from_raw(self.0.clone())
    }
}

pub fn syndromes(
    spec: &CodeSpec,
    h: &CheckMatrix,
    r: &Word,
) -> Result<SyndromeVector, DecodeError> {
    if r.len() != spec.length() {
        return Err(DecodeError::LengthMismatch {
            expected: spec.length(),
            got: r.len(),
        });
    }
    let s = syndrome_of(spec.field(), h, r).expect("length checked");
    Ok(SyndromeVector(s))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyEquationSolution {
    /// Error locator, λ(0) = 1.
    pub lambda: PolyF,
    /// Error evaluator, λ·S mod x^t.
    pub omega: PolyF,
    /// Length of the shortest recurrence generating S.
    pub register_length: usize,
}

/// Shortest linear recurrence for S (Berlekamp–Massey), then ω = λ·S mod x^t.
pub fn solve_key_equation(
    field: &TowerField,
    s: &SyndromeVector,
) -> Result<KeyEquationSolution, DecodeError> {
    let ring = PolyRing::new(field);
    let seq = &s.0;
    let mut conn = vec![Felt::ONE];
    let mut prev = vec![Felt::ONE];
    let mut len = 0usize;
    let mut gap = 1usize;
    let mut prev_disc = Felt::ONE;
    for n in 0..seq.len() {
        let disc = (1..=len).fold(seq[n], |acc, i| {
            field.add(
                acc,
                field.mul(conn.get(i).copied().unwrap_or(Felt::ZERO), seq[n - i]),
            )
        });
        if disc.is_zero() {
            gap += 1;
            continue;
        }
        let coef = field.neg(
            field
                .div(disc, prev_disc)
                .expect("prev discrepancy nonzero"),
        );
        let mut next = conn.clone();
        if next.len() < prev.len() + gap {
            next.resize(prev.len() + gap, Felt::ZERO);
        }
        for (i, &b) in prev.iter().enumerate() {
            next[i + gap] = field.add(next[i + gap], field.mul(coef, b));
        }
        if 2 * len <= n {
            prev = std::mem::replace(&mut conn, next);
            len = n + 1 - len;
            prev_disc = disc;
            gap = 1;
        } else {
            conn = next;
            gap += 1;
        }
    }
    let lambda = PolyF::from_raw(conn);
    let omega = ring.truncate(&ring.mul(&lambda, &s.as_poly()), seq.len());
    let deg_lambda = lambda.degree().unwrap_or(0);
    if let Some(deg_omega) = omega.degree() {
        if deg_omega > deg_lambda {
            return Err(DecodeError::at(
                DecodeStage::KeyEquation,
                format!("deg omega = {deg_omega} > deg lambda = {deg_lambda}"),
            ));
        }
    }
    Ok(KeyEquationSolution {
        lambda,
        omega,
        register_length: len,
    })
}

/// p_l = minimal polynomial of β^(−rep l) for every orbit, with reverse lookup.
#[derive(Clone, Debug)]
pub struct OrbitMinPolyTable {
    polys: Vec<PolyF>,
    reverse: HashMap<Vec<Felt>, usize>,
}

impl OrbitMinPolyTable {
    pub fn build(field: &TowerField, locations: &LocationSet) -> Self {
        let polys: Vec<PolyF> = locations
            .orbits()
            .iter()
            .map(|o| {
                field
                    .minimal_polynomial(field.beta_pow(-(o.rep() as i64)))
                    .expect("unit element")
                    .into()
            })
            .collect();
        let reverse = polys
            .iter()
            .enumerate()
            .map(|(i, p)| (p.coeffs().to_vec(), i))
            .collect();
        OrbitMinPolyTable { polys, reverse }
    }

    pub fn get(&self, idx: usize) -> &PolyF {
        &self.polys[idx]
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Orbit whose p_l equals the given monic polynomial.
    pub fn lookup(&self, monic: &PolyF) -> Option<usize> {
        self.reverse.get(monic.coeffs()).copied()
    }
}

/// E = {l : p_l | λ}, required to factor λ completely into distinct p_l.
pub fn locate_errors(
    field: &TowerField,
    sol: &KeyEquationSolution,
    table: &OrbitMinPolyTable,
    locations: &LocationSet,
) -> Result<Vec<usize>, DecodeError> {
    let ring = PolyRing::new(field);
    let deg = sol.lambda.degree().unwrap_or(0);
    if deg == 0 {
        return Ok(Vec::new());
    }
    let (_, monic) = ring.monic(&sol.lambda);
    if let Some(l) = table.lookup(&monic) {
        return Ok(vec![l]);
    }
    let support: Vec<usize> = (0..table.len())
        .filter(|&l| locations.get(l).size() <= deg && ring.divides(table.get(l), &monic))
        .collect();
    let covered: usize = support.iter().map(|&l| locations.get(l).size()).sum();
    let product = support
        .iter()
        .fold(PolyF::one(), |acc, &l| ring.mul(&acc, table.get(l)));
    if covered != deg || product != monic {
        return Err(DecodeError::at(
            DecodeStage::Locate,
            format!(
                "lambda of degree {deg} is not a product of distinct orbit polynomials \
                 (matched degree {covered}); beyond radius or corrupted"
            ),
        ));
    }
    Ok(support)
}

/// Error support (coordinate indices, ascending) with nonzero values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErrorWord {
    pub support: Vec<usize>,
    pub values: Vec<Felt>,
    pub word: Word,
}

impl ErrorWord {
    pub fn empty(len: usize) -> Self {
        ErrorWord {
            support: Vec::new(),
            values: Vec::new(),
            word: Word::zero(len),
        }
    }

    pub fn from_word(word: Word) -> Self {
        let support = word.support();
        let values = support.iter().map(|&l| word.0[l]).collect();
        ErrorWord {
            support,
            values,
            word,
        }
    }

    pub fn degree_weight(&self, locations: &LocationSet) -> usize {
        self.word.degree_weight(locations)
    }
}

/// e_l = −ω*/(x·ρ(1/x)·p_l'·Π_{u≠l} p_u) mod p_l, where λ* = Π p_l is the
/// monic locator, c = λ*(0) and ω* = c·ω (so ω*/λ* = ω/λ).
pub fn error_values(
    spec: &CodeSpec,
    sol: &KeyEquationSolution,
    support: &[usize],
    table: &OrbitMinPolyTable,
) -> Result<ErrorWord, DecodeError> {
    let field = spec.field();
    let ring = PolyRing::new(field);
    let mut word = Word::zero(spec.length());
    if support.is_empty() {
        return Ok(ErrorWord::empty(spec.length()));
    }
    let locator = support
        .iter()
        .fold(PolyF::one(), |acc, &l| ring.mul(&acc, table.get(l)));
    let c = locator.coeff(0);
    let omega_star = ring.scale(&sol.omega, c);
    let mut values = Vec::with_capacity(support.len());
    for &l in support {
        let p_l = table.get(l);
        let rho_inv_x = ring
            .eval_at_inverse_mod(spec.rho(), p_l)
            .map_err(|e| DecodeError::at(DecodeStage::Values, e.to_string()))?;
        let others = support
            .iter()
            .filter(|&&u| u != l)
            .fold(PolyF::one(), |acc, &u| ring.mul(&acc, table.get(u)));
        let denom = [PolyF::x(), rho_inv_x, ring.derivative(p_l), others]
            .iter()
            .fold(PolyF::one(), |acc, f| {
                ring.rem(&ring.mul(&acc, f), p_l).expect("nonzero modulus")
            });
        let denom_inv = ring.inverse_mod(&denom, p_l).map_err(|_| {
            DecodeError::at(
                DecodeStage::Values,
                format!("denominator not invertible modulo p_l at orbit {l}"),
            )
        })?;
        let residue = ring
            .rem(&ring.neg(&ring.mul(&omega_star, &denom_inv)), p_l)
            .expect("nonzero modulus");
        let value = match residue.degree() {
            Some(0) => residue.coeff(0),
            Some(d) => {
                return Err(DecodeError::at(
                    DecodeStage::Values,
                    format!("residue at orbit {l} has degree {d}"),
                ))
            }
            None => {
                return Err(DecodeError::at(
                    DecodeStage::Values,
                    format!("residue at orbit {l} is zero"),
                ))
            }
        };
        word.0[l] = value;
        values.push(value);
    }
    Ok(ErrorWord {
        support: support.to_vec(),
        values,
        word,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoded {
    pub codeword: Word,
    pub error: ErrorWord,
    pub syndromes: SyndromeVector,
    pub solution: KeyEquationSolution,
}

pub fn decode(
    spec: &CodeSpec,
    h: &CheckMatrix,
    table: &OrbitMinPolyTable,
    r: &Word,
) -> Result<Decoded, DecodeError> {
    let field = spec.field();
    let s = syndromes(spec, h, r)?;
    if s.is_zero() {
        return Ok(Decoded {
            codeword: r.clone(),
            error: ErrorWord::empty(spec.length()),
            syndromes: s,
            solution: KeyEquationSolution {
                lambda: PolyF::one(),
                omega: PolyF::zero(),
                register_length: 0,
            },
        });
    }
    let solution = solve_key_equation(field, &s)?;
    let radius = spec.t() / 2;
    let deg = solution.lambda.degree().unwrap_or(0);
    if deg > radius {
        return Err(DecodeError::at(
            DecodeStage::Radius,
            format!("deg lambda = {deg} > {radius}"),
        ));
    }
    let support = locate_errors(field, &solution, table, spec.locations())?;
    let error = error_values(spec, &solution, &support, table)?;
    let codeword = r.sub(field, &error.word);
    let residual = syndrome_of(field, h, &codeword).expect("length checked");
    if residual.iter().any(|x| !x.is_zero()) {
        return Err(DecodeError::at(
            DecodeStage::Verification,
            "corrected word has nonzero syndrome",
        ));
    }
    let weight = error.degree_weight(spec.locations());
    if weight > radius {
        return Err(DecodeError::at(
            DecodeStage::Verification,
            format!("error degree-weight {weight} > {radius}"),
        ));
    }
    Ok(Decoded {
        codeword,
        error,
        syndromes: s,
        solution,
    })
}

/// A code bundled with its p_l table.
#[derive(Clone, Debug)]
pub struct Decoder {
    pub code: Code,
    pub table: OrbitMinPolyTable,
}

impl Decoder {
    pub fn new(code: Code) -> Self {
        let table = OrbitMinPolyTable::build(code.spec.field(), code.spec.locations());
        Decoder { code, table }
    }

    pub fn decode(&self, r: &Word) -> Result<Decoded, DecodeError> {
        decode(&self.code.spec, &self.code.h, &self.table, r)
    }
}
