//! Seeded channel simulation: encode a random message, plant a random error of
//! bounded degree-weight, decode, and classify the outcome.
//!
//! Randomness comes from ChaCha8 seeded with `seed_from_u64(seed)`. Every
//! trial logs its drawn message, error support and error values, so a
//! transcript can be replayed without the generator.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::Word;
use crate::decoder::Decoder;
use crate::error::{Error, Result};
use crate::galois::Felt;
use crate::polyring::format_symbols;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Failure,
    Miscorrection,
}

impl Outcome {
    fn label(self) -> &'static str {
        match self {
            Outcome::Success => "success",
            Outcome::Failure => "failure",
            Outcome::Miscorrection => "miscorrection",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimulationSummary {
    pub trials: u64,
    pub successes: u64,
    pub failures: u64,
    pub miscorrections: u64,
    /// One line per trial.
    pub transcript: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimulationConfig {
    pub trials: u64,
    pub max_degree: usize,
    pub seed: u64,
    /// Allows errors beyond ⌊t/2⌋.
    pub stress: bool,
}

/// Random nonzero error of degree-weight ≤ `budget`: orbits are visited in a
/// shuffled order, the first that fits is always taken, later ones with
/// probability 1/2.
pub fn random_error(
    rng: &mut ChaCha8Rng,
    sizes: &[usize],
    nonzero: &[Felt],
    budget: usize,
) -> Word {
    let mut order: Vec<usize> = (0..sizes.len()).collect();
    order.shuffle(rng);
    let mut word = Word::zero(sizes.len());
    let mut left = budget;
    let mut first = true;
    for l in order {
        if sizes[l] > left {
            continue;
        }
        if first || rng.random_bool(0.5) {
            word.0[l] = nonzero[rng.random_range(0..nonzero.len())];
            left -= sizes[l];
            first = false;
        }
    }
    word
}

pub fn simulate(decoder: &Decoder, cfg: SimulationConfig) -> Result<SimulationSummary> {
    let spec = &decoder.code.spec;
    let field = spec.field();
    let radius = spec.t() / 2;
    if !cfg.stress && cfg.max_degree > radius {
        return Err(Error::InvalidArgument(format!(
            "error degree {} exceeds the decoding radius {radius}; use stress mode",
            cfg.max_degree
        )));
    }
    let symbols: Vec<Felt> = field.subfield_elements().collect();
    let sizes = spec.locations().sizes();
    let dim = decoder.code.dimension();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut summary = SimulationSummary::default();
    for trial in 0..cfg.trials {
        let message: Vec<Felt> = (0..dim)
            .map(|_| symbols[rng.random_range(0..symbols.len())])
            .collect();
        let codeword = decoder.code.encode(&message)?;
        let error = random_error(&mut rng, &sizes, &symbols[1..], cfg.max_degree);
        let received = codeword.add(field, &error);
        let outcome = match decoder.decode(&received) {
            Ok(d) if d.codeword == codeword => Outcome::Success,
            Ok(_) => Outcome::Miscorrection,
            Err(_) => Outcome::Failure,
        };
        match outcome {
            Outcome::Success => summary.successes += 1,
            Outcome::Failure => summary.failures += 1,
            Outcome::Miscorrection => summary.miscorrections += 1,
        }
        let support = error.support();
        let reps: Vec<u32> = support
            .iter()
            .map(|&l| spec.locations().get(l).rep())
            .collect();
        let values: Vec<u32> = support
            .iter()
            .map(|&l| field.subfield_index(error.0[l]).expect("in F"))
            .collect();
        let msg: Vec<u32> = message
            .iter()
            .map(|&c| field.subfield_index(c).expect("in F"))
            .collect();
        summary.transcript.push(format!(
            "trial={trial} message={} support={} values={} degree={} outcome={}",
            format_symbols(&msg),
            format_symbols(&reps),
            format_symbols(&values),
            error.degree_weight(spec.locations()),
            outcome.label()
        ));
        summary.trials += 1;
    }
    Ok(summary)
}
