use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::Code;
use crate::error::{Error, Result};
use crate::metric::graph_weights;

/// Outcome of a unit-error channel run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChannelStats {
    pub p: usize,
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub epsilon: f64,
    /// Trials where no coordinate was corrupted.
    pub clean_trials: u64,
    /// Trials whose decoded codeword differs from the transmitted one.
    pub word_errors: u64,
    pub word_error_rate: f64,
    /// Decoded symbols differing from the transmitted ones.
    pub symbol_errors: u64,
    pub symbol_error_rate: f64,
    /// Entry `w` counts trials with exactly `w` injected unit errors.
    pub injected_weight_histogram: Vec<u64>,
    pub single_error_trials: u64,
    pub single_error_corrected: u64,
    /// Trials where the decoder output was not a codeword within graph
    /// distance one of the received word. Zero for a perfect code.
    pub decoder_violations: u64,
}

#[derive(Debug, Default)]
struct Tally {
    clean: u64,
    word_errors: u64,
    symbol_errors: u64,
    histogram: Vec<u64>,
    single: u64,
    single_corrected: u64,
    violations: u64,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.clean += other.clean;
        self.word_errors += other.word_errors;
        self.symbol_errors += other.symbol_errors;
        if self.histogram.len() < other.histogram.len() {
            self.histogram.resize(other.histogram.len(), 0);
        }
        for (a, b) in self.histogram.iter_mut().zip(other.histogram) {
            *a += b;
        }
        self.single += other.single;
        self.single_corrected += other.single_corrected;
        self.violations += other.violations;
        self
    }
}

impl Code {
    /// Encodes uniformly random messages, adds a uniformly chosen unit to each
    /// coordinate independently with probability `epsilon`, and decodes.
    ///
    /// Trial `i` draws from a ChaCha8 stream keyed by `(seed, i)`, so the
    /// result does not depend on how trials are scheduled across threads.
    pub fn simulate(&self, trials: u64, seed: u64, epsilon: f64) -> Result<ChannelStats> {
        if self.t != 0 {
            return Err(Error::SingleRowOnly {
                op: "channel simulation",
                t: self.t,
            });
        }
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(Error::InvalidProbability(epsilon));
        }
        let graph = graph_weights(&self.field);
        let units = self.field.unit_labels();
        let p = self.field.p();

        let run_trial = |trial: u64| -> Result<Tally> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial);
            let message: Vec<usize> = (0..self.k).map(|_| rng.random_range(0..p)).collect();
            let sent = self.encode(&message)?;
            let mut received = sent.clone().into_inner();
            let mut injected = 0;
            for symbol in received.iter_mut() {
                if rng.random::<f64>() < epsilon {
                    let unit = units[rng.random_range(0..units.len())];
                    *symbol = (*symbol + unit) % p;
                    injected += 1;
                }
            }
            let decoded = self.decode_single(&received)?;
            let symbol_errors = decoded
                .codeword
                .iter()
                .zip(sent.iter())
                .filter(|(a, b)| a != b)
                .count() as u64;
            let distance: u64 = received
                .iter()
                .zip(decoded.codeword.iter())
                .map(|(&a, &b)| u64::from(graph[(a + p - b) % p]))
                .sum();
            let ok = self.is_codeword(&decoded.codeword)? && distance <= 1;

            let mut histogram = vec![0; self.n + 1];
            histogram[injected] = 1;
            Ok(Tally {
                clean: u64::from(injected == 0),
                word_errors: u64::from(symbol_errors > 0),
                symbol_errors,
                histogram,
                single: u64::from(injected == 1),
                single_corrected: u64::from(injected == 1 && symbol_errors == 0),
                violations: u64::from(!ok),
            })
        };

        let tally = (0..trials)
            .into_par_iter()
            .map(run_trial)
            .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;

        let mut histogram = tally.histogram;
        histogram.resize(self.n + 1, 0);
        let rate = |num: u64, den: u64| {
            if den == 0 {
                0.0
            } else {
                num as f64 / den as f64
            }
        };
        Ok(ChannelStats {
            p,
            n: self.n,
            trials,
            seed,
            epsilon,
            clean_trials: tally.clean,
            word_errors: tally.word_errors,
            word_error_rate: rate(tally.word_errors, trials),
            symbol_errors: tally.symbol_errors,
            symbol_error_rate: rate(tally.symbol_errors, trials * self.n as u64),
            injected_weight_histogram: histogram,
            single_error_trials: tally.single,
            single_error_corrected: tally.single_corrected,
            decoder_violations: tally.violations,
        })
    }
}
