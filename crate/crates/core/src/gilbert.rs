//! Goppa-style description of C(g⁻¹, t) and the search for a defining
//! polynomial g whose code has degree-distance above the Gilbert threshold D.
//!
//! For ρ = g⁻¹ mod x^(q^m−1) − 1 and t = deg g, a word c is a codeword iff g
//! divides the numerator of Σ_l c_l Σ_{j∈l} 1/(x − β^j). Writing m_l for the
//! minimal polynomial of β^(rep l), the inner sum is m_l'/m_l, so the
//! numerator is Σ_l c_l·m_l'·Π_{u≠l} m_u and lives in F[x].
//!
//! Weights here are degree-weights: a word of degree-weight d has a numerator
//! of degree ≤ d − 1, which is what the counting argument needs.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::code::{generator_matrix, CheckMatrix, Code, CodeSpec, RhoCheck, Word};
use crate::error::{Error, Result};
use crate::galois::{Felt, TowerField};
use crate::orbits::LocationSet;
use crate::polyring::{PolyF, PolyRing};

/// Enumeration guard for brute-force distance audits: q^dim ≤ 2^24.
pub const AUDIT_GUARD: u64 = 1 << 24;

/// Caches m_l and m_l' for every orbit.
#[derive(Clone, Debug)]
pub struct PartialFractions<'a> {
    field: &'a TowerField,
    poles: Vec<PolyF>,
    derivs: Vec<PolyF>,
}

impl<'a> PartialFractions<'a> {
    pub fn new(field: &'a TowerField, locations: &LocationSet) -> Self {
        let ring = PolyRing::new(field);
        let poles: Vec<PolyF> = locations
            .orbits()
            .iter()
            .map(|o| {
                field
                    .minimal_polynomial(field.beta_pow(o.rep() as i64))
                    .expect("unit")
                    .into()
            })
            .collect();
        let derivs = poles.iter().map(|p| ring.derivative(p)).collect();
        PartialFractions {
            field,
            poles,
            derivs,
        }
    }

    /// Numerator of Σ_l c_l Σ_{j∈l} 1/(x − β^j) over Π_{l∈supp c} m_l.
    pub fn numerator(&self, c: &Word) -> Result<PolyF> {
        if c.len() != self.poles.len() {
            return Err(Error::LengthMismatch {
                expected: self.poles.len(),
                got: c.len(),
            });
        }
        let support = c.support();
        if support.is_empty() {
            return Err(Error::InvalidArgument("numerator of the zero word".into()));
        }
        let ring = PolyRing::new(self.field);
        let mut total = PolyF::zero();
        for &l in &support {
            let mut term = ring.scale(&self.derivs[l], c.0[l]);
            for &u in support.iter().filter(|&&u| u != l) {
                term = ring.mul(&term, &self.poles[u]);
            }
            total = ring.add(&total, &term);
        }
        Ok(total)
    }

    /// Membership in C(g⁻¹, deg g) via divisibility of the numerator.
    pub fn is_member(&self, c: &Word, g: &PolyF) -> Result<bool> {
        if c.is_zero() {
            return Ok(true);
        }
        let ring = PolyRing::new(self.field);
        Ok(ring.divides(g, &self.numerator(c)?))
    }
}

pub fn partial_fraction_numerator(
    c: &Word,
    field: &TowerField,
    locations: &LocationSet,
) -> Result<PolyF> {
    PartialFractions::new(field, locations).numerator(c)
}

/// c ∈ C(g⁻¹, deg g) decided without building a check matrix.
pub fn goppa_membership(
    c: &Word,
    g: &PolyF,
    field: &TowerField,
    locations: &LocationSet,
) -> Result<bool> {
    if let Some(j) = PolyRing::new(field).find_unit_root(g) {
        return Err(Error::HasRoot { exponent: j });
    }
    PartialFractions::new(field, locations).is_member(c, g)
}

/// counts[d] = number of words of degree-weight d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightEnumerator {
    pub counts: Vec<BigUint>,
}

impl WeightEnumerator {
    pub fn count(&self, d: usize) -> BigUint {
        self.counts.get(d).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    pub fn max_degree(&self) -> usize {
        self.counts.len() - 1
    }
}

/// Coefficients of Π_l (1 + (q − 1)·z^|l|).
pub fn weight_enumerator(locations: &LocationSet, q: u64) -> WeightEnumerator {
    let nonzero = BigUint::from(q - 1);
    let mut counts = vec![BigUint::one()];
    for orbit in locations.orbits() {
        let s = orbit.size();
        let mut next = counts.clone();
        next.resize(counts.len() + s, BigUint::zero());
        for (d, c) in counts.iter().enumerate() {
            next[d + s] += c * &nonzero;
        }
        counts = next;
    }
    WeightEnumerator { counts }
}

/// The largest D with Σ_{e=1}^{D} (e−1)|B_e| below q^t − q^(t/2) − 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GilbertThreshold {
    pub d: usize,
    /// q^t − q^(t/2) − 1, with q^(t/2) rounded up for odd t.
    pub threshold: BigUint,
    pub sum_at_d: BigUint,
    pub sum_at_d_plus_1: BigUint,
}

fn check_degree(t: usize, m: u32) -> Result<()> {
    if t < 2 {
        return Err(Error::InvalidArgument(format!("t = {t} must exceed 1")));
    }
    if gcd(t as u64, m as u64) != 1 {
        return Err(Error::InvalidArgument(format!(
            "t = {t} is not prime to m = {m}"
        )));
    }
    Ok(())
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn gilbert_threshold(q: u64, t: usize) -> BigUint {
    let qt = BigUint::from(q).pow(t as u32);
    let half = if t.is_multiple_of(2) {
        BigUint::from(q).pow(t as u32 / 2)
    } else {
        let s = qt.sqrt();
        if &s * &s < qt {
            s + 1u32
        } else {
            s
        }
    };
    qt - half - 1u32
}

#[allow(non_snake_case)]
pub fn compute_D(
    enumerator: &WeightEnumerator,
    q: u64,
    m: u32,
    t: usize,
) -> Result<GilbertThreshold> {
    check_degree(t, m)?;
    let threshold = gilbert_threshold(q, t);
    let mut sum = BigUint::zero();
    for e in 1..=enumerator.max_degree() {
        let next = &sum + enumerator.count(e) * BigUint::from(e - 1);
        if next >= threshold {
            return Ok(GilbertThreshold {
                d: e - 1,
                threshold,
                sum_at_d: sum,
                sum_at_d_plus_1: next,
            });
        }
        sum = next;
    }
    Err(Error::InvalidArgument(format!(
        "cumulative count {sum} never reaches the threshold {threshold}; D is unbounded"
    )))
}

/// Every nonzero word of degree-weight ≤ `max_degree`, ascending by weight.
pub fn words_up_to_degree(
    field: &TowerField,
    locations: &LocationSet,
    max_degree: usize,
) -> Vec<Word> {
    fn walk(
        idx: usize,
        budget: usize,
        sizes: &[usize],
        values: &[Felt],
        cur: &mut Vec<Felt>,
        out: &mut Vec<Word>,
    ) {
        if idx == sizes.len() {
            if cur.iter().any(|c| !c.is_zero()) {
                out.push(Word(cur.clone()));
            }
            return;
        }
        walk(idx + 1, budget, sizes, values, cur, out);
        if sizes[idx] <= budget {
            for &v in values {
                cur[idx] = v;
                walk(idx + 1, budget - sizes[idx], sizes, values, cur, out);
            }
            cur[idx] = Felt::ZERO;
        }
    }
    let sizes = locations.sizes();
    let values: Vec<Felt> = field.subfield_elements().skip(1).collect();
    let mut cur = vec![Felt::ZERO; sizes.len()];
    let mut out = Vec::new();
    walk(0, max_degree, &sizes, &values, &mut cur, &mut out);
    out.sort_by_key(|w| w.degree_weight(locations));
    out
}

/// Minimum weights over nonzero codewords; `None` when the code is {0}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinWeights {
    pub degree: Option<usize>,
    pub hamming: Option<usize>,
}

pub fn brute_force_min_degree_weight(spec: &CodeSpec, h: &CheckMatrix) -> Result<MinWeights> {
    let field = spec.field();
    let generator = generator_matrix(spec, h);
    let dim = generator.dimension();
    let q = field.q();
    let words = q
        .checked_pow(dim as u32)
        .filter(|&w| w <= AUDIT_GUARD)
        .ok_or_else(|| Error::GuardExceeded(format!("q^dim = {q}^{dim} exceeds {AUDIT_GUARD}")))?;
    let symbols: Vec<Felt> = field.subfield_elements().collect();
    let mut best = MinWeights {
        degree: None,
        hamming: None,
    };
    let mut message = vec![0u64; dim];
    for _ in 1..words {
        // odometer over base-q messages, skipping the zero message
        for digit in message.iter_mut() {
            *digit += 1;
            if *digit < q {
                break;
            }
            *digit = 0;
        }
        let coeffs: Vec<Felt> = message.iter().map(|&d| symbols[d as usize]).collect();
        let w = crate::code::encode(spec, &generator, &coeffs)?;
        let deg = w.degree_weight(spec.locations());
        let ham = w.hamming_weight();
        best.degree = Some(best.degree.map_or(deg, |b| b.min(deg)));
        best.hamming = Some(best.hamming.map_or(ham, |b| b.min(ham)));
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateVerdict {
    pub g: PolyF,
    /// Degree-weights e ≤ D at which C(g⁻¹, t) has a nonzero codeword.
    pub bad_degrees: Vec<usize>,
}

impl CandidateVerdict {
    pub fn is_good(&self) -> bool {
        self.bad_degrees.is_empty()
    }
}

/// Number of bad candidates seen at degree-weight e against ⌊(e−1)/t⌋·|B_e|.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadCount {
    pub degree: usize,
    pub count: u64,
    pub bound: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub q: u64,
    pub m: u32,
    pub t: usize,
    pub d: usize,
    pub candidates: Vec<CandidateVerdict>,
    pub winner: Option<PolyF>,
    pub bad_counts: Vec<BadCount>,
    pub audit: Option<MinWeights>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Keep testing candidates after the first winner.
    pub exhaustive: bool,
    /// Worker threads; 1 runs inline.
    pub jobs: usize,
    /// Brute-force the winner's minimum distance.
    pub audit: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            exhaustive: false,
            jobs: 1,
            audit: true,
        }
    }
}

fn judge(ring: &PolyRing, fractions: &[(usize, PolyF)], g: PolyF) -> Result<CandidateVerdict> {
    if let Some(j) = ring.find_unit_root(&g) {
        return Err(Error::Internal(format!(
            "irreducible candidate vanishes at beta^{j}"
        )));
    }
    let mut bad_degrees: Vec<usize> = fractions
        .iter()
        .filter(|(_, num)| ring.divides(&g, num))
        .map(|(e, _)| *e)
        .collect();
    bad_degrees.dedup();
    Ok(CandidateVerdict { g, bad_degrees })
}

/// Scans monic irreducible g of degree t in lexicographic order for one whose
/// code has no nonzero word of degree-weight ≤ D.
pub fn search_good_g(
    field: &Arc<TowerField>,
    locations: &Arc<LocationSet>,
    t: usize,
    d: usize,
    opts: SearchOptions,
) -> Result<SearchReport> {
    check_degree(t, field.m())?;
    let ring = PolyRing::new(field);
    let fractions_ctx = PartialFractions::new(field, locations);
    let fractions: Vec<(usize, PolyF)> = words_up_to_degree(field, locations, d)
        .into_iter()
        .map(|w| {
            let e = w.degree_weight(locations);
            fractions_ctx.numerator(&w).map(|num| (e, num))
        })
        .collect::<Result<_>>()?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    let mut candidates = Vec::new();
    let mut pending = ring.enumerate_irreducible(t).peekable();
    let chunk = opts.jobs.max(1);
    'outer: while pending.peek().is_some() {
        let batch: Vec<PolyF> = pending.by_ref().take(chunk).collect();
        let verdicts: Vec<CandidateVerdict> = if chunk == 1 {
            batch
                .into_iter()
                .map(|g| judge(&ring, &fractions, g))
                .collect::<Result<_>>()?
        } else {
            pool.install(|| {
                batch
                    .into_par_iter()
                    .map(|g| judge(&ring, &fractions, g))
                    .collect::<Result<_>>()
            })?
        };
        for v in verdicts {
            let good = v.is_good();
            candidates.push(v);
            if good && !opts.exhaustive {
                break 'outer;
            }
        }
    }

    let enumerator = weight_enumerator(locations, field.q());
    let bad_counts: Vec<BadCount> = (1..=d)
        .map(|e| BadCount {
            degree: e,
            count: candidates
                .iter()
                .filter(|c| c.bad_degrees.contains(&e))
                .count() as u64,
            bound: BigUint::from((e - 1) / t) * enumerator.count(e),
        })
        .collect();
    if let Some(b) = bad_counts.iter().find(|b| BigUint::from(b.count) > b.bound) {
        return Err(Error::Internal(format!(
            "{} bad polynomials at degree-weight {} exceed the bound {}",
            b.count, b.degree, b.bound
        )));
    }

    let winner = candidates.iter().find(|c| c.is_good()).map(|c| c.g.clone());
    let audit = match (&winner, opts.audit) {
        (Some(g), true) => {
            let rho = ring.inverse_mod_cyclic(g)?;
            let spec = CodeSpec::with_locations(
                field.clone(),
                locations.clone(),
                t,
                rho,
                RhoCheck::Enforce,
            )?;
            let code = Code::new(spec)?;
            let w = brute_force_min_degree_weight(&code.spec, &code.h)?;
            if w.degree.is_some_and(|deg| deg <= d) {
                return Err(Error::Internal(format!(
                    "winner has a codeword of degree-weight {:?} <= D = {d}",
                    w.degree
                )));
            }
            Some(w)
        }
        _ => None,
    };
    Ok(SearchReport {
        q: field.q(),
        m: field.m(),
        t,
        d,
        candidates,
        winner,
        bad_counts,
        audit,
    })
}

/// Computes D from the weight enumerator and runs the search; a search that
/// finds no winner contradicts the counting bound and is an internal error.
pub fn gilbert_search(
    field: &Arc<TowerField>,
    locations: &Arc<LocationSet>,
    t: usize,
    opts: SearchOptions,
) -> Result<(GilbertThreshold, SearchReport)> {
    let enumerator = weight_enumerator(locations, field.q());
    let threshold = compute_D(&enumerator, field.q(), field.m(), t)?;
    let report = search_good_g(field, locations, t, threshold.d, opts)?;
    if report.winner.is_none() {
        return Err(Error::Internal(format!(
            "no irreducible polynomial of degree {t} survives D = {}",
            threshold.d
        )));
    }
    Ok((threshold, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::FieldParams;

    fn setup(p: u32, m: u32) -> (Arc<TowerField>, Arc<LocationSet>) {
        let params = FieldParams::new(p, 1, m).unwrap();
        (
            Arc::new(TowerField::new(params).unwrap()),
            Arc::new(LocationSet::enumerate(&params)),
        )
    }

    #[test]
    fn numerator_examples() {
        let (f, l) = setup(3, 2);
        let ring = PolyRing::new(&f);
        let unit0 = Word::from_symbols(&f, &[1, 0, 0, 0, 0]).unwrap();
        assert_eq!(
            partial_fraction_numerator(&unit0, &f, &l).unwrap(),
            PolyF::one()
        );
        let unit1 = Word::from_symbols(&f, &[0, 1, 0, 0, 0]).unwrap();
        assert_eq!(
            partial_fraction_numerator(&unit1, &f, &l).unwrap(),
            ring.from_symbols(&[1, 2]).unwrap()
        );
        assert!(partial_fraction_numerator(&Word::zero(5), &f, &l).is_err());
    }

    #[test]
    fn membership_edge_cases() {
        let (f, l) = setup(3, 2);
        let ring = PolyRing::new(&f);
        let g = ring.from_symbols(&[1, 2, 0, 1]).unwrap();
        assert!(goppa_membership(&Word::zero(5), &g, &f, &l).unwrap());
        let unit0 = Word::from_symbols(&f, &[1, 0, 0, 0, 0]).unwrap();
        assert!(!goppa_membership(&unit0, &g, &f, &l).unwrap());
        let bad = ring.from_symbols(&[2, 1]).unwrap();
        assert!(matches!(
            goppa_membership(&unit0, &bad, &f, &l),
            Err(Error::HasRoot { .. })
        ));
    }

    #[test]
    fn enumerator_small() {
        let (_, l) = setup(3, 2);
        let w = weight_enumerator(&l, 3);
        let got: Vec<u32> = w.counts.iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(&got[..4], &[1, 4, 10, 24]);
        assert_eq!(w.total(), BigUint::from(243u32));
    }

    #[test]
    fn threshold_values() {
        let (_, l) = setup(3, 2);
        let w = weight_enumerator(&l, 3);
        let d = compute_D(&w, 3, 2, 3).unwrap();
        assert_eq!(d.d, 2);
        assert_eq!(d.threshold, BigUint::from(20u32));
        assert_eq!(d.sum_at_d, BigUint::from(10u32));
        assert_eq!(d.sum_at_d_plus_1, BigUint::from(58u32));
        // q^(t/2) exact for even t: 2^4 − 2^2 − 1
        assert_eq!(gilbert_threshold(2, 4), BigUint::from(11u32));
        assert!(compute_D(&w, 3, 2, 2).is_err());
        assert!(compute_D(&w, 3, 2, 1).is_err());
    }

    #[test]
    fn huge_second_layer_caps_d_at_one() {
        let w = WeightEnumerator {
            counts: vec![1u32, 0, 1_000_000, 5]
                .into_iter()
                .map(BigUint::from)
                .collect(),
        };
        assert_eq!(compute_D(&w, 3, 2, 3).unwrap().d, 1);
    }

    #[test]
    fn words_by_degree() {
        let (f, l) = setup(3, 2);
        let words = words_up_to_degree(&f, &l, 2);
        assert_eq!(words.len(), 4 + 10);
        assert!(words
            .windows(2)
            .all(|w| w[0].degree_weight(&l) <= w[1].degree_weight(&l)));
    }

    #[test]
    fn zero_threshold_search_takes_first_irreducible() {
        let (f, l) = setup(3, 2);
        let opts = SearchOptions {
            audit: false,
            ..Default::default()
        };
        let r = search_good_g(&f, &l, 3, 0, opts).unwrap();
        assert_eq!(r.candidates.len(), 1);
        assert_eq!(
            r.winner.unwrap(),
            PolyRing::new(&f).from_symbols(&[1, 2, 0, 1]).unwrap()
        );
    }

    #[test]
    fn binary_search_single_candidate() {
        let (f, l) = setup(2, 3);
        let opts = SearchOptions {
            exhaustive: true,
            ..Default::default()
        };
        let r = search_good_g(&f, &l, 2, 1, opts).unwrap();
        assert_eq!(r.candidates.len(), 1);
        assert_eq!(
            r.candidates[0].g,
            PolyRing::new(&f).from_symbols(&[1, 1, 1]).unwrap()
        );
    }

    #[test]
    fn audit_of_trivial_code() {
        let (f, l) = setup(2, 3);
        let spec = CodeSpec::with_locations(f, l, 2, PolyF::one(), RhoCheck::Enforce).unwrap();
        let code = Code::new(spec).unwrap();
        let w = brute_force_min_degree_weight(&code.spec, &code.h).unwrap();
        assert_eq!(
            w,
            MinWeights {
                degree: Some(4),
                hamming: Some(2)
            }
        );
    }
}
