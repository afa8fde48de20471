use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use super::Code;
use crate::error::{Error, Result};
use crate::metric::graph_weights;

/// Largest ambient space `p^n` the exhaustive partition check will enumerate.
pub const EXHAUSTIVE_SPACE_LIMIT: u64 = 10_000_000;

fn as_decimal<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Sphere-packing check for a `t = 0` code. The three counts are serialised
/// as decimal strings because `p^n` outgrows 64 bits quickly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PerfectnessReport {
    pub p: usize,
    pub n: usize,
    #[serde(serialize_with = "as_decimal")]
    pub codeword_count: BigUint,
    pub ball_size: u64,
    #[serde(serialize_with = "as_decimal")]
    pub space_size: BigUint,
    pub packing_identity_holds: bool,
    pub exhaustive_partition_verified: bool,
}

impl Code {
    /// Checks `p^(n-1) (6n+1) = p^n` and, when `exhaustive` is set, that the
    /// radius-1 graph-metric balls around codewords cover every word exactly
    /// once. Exhaustive mode fails with `LimitExceeded` when `p^n` exceeds
    /// [`EXHAUSTIVE_SPACE_LIMIT`]; [`Code::packing_report`] still works there.
    pub fn verify_perfect(&self, exhaustive: bool) -> Result<PerfectnessReport> {
        let mut report = self.packing_report()?;
        if exhaustive {
            let space = &report.space_size;
            if *space > BigUint::from(EXHAUSTIVE_SPACE_LIMIT) {
                return Err(Error::LimitExceeded {
                    what: "p^n for an exhaustive partition check",
                    value: space.to_string(),
                    limit: EXHAUSTIVE_SPACE_LIMIT.to_string(),
                });
            }
            report.exhaustive_partition_verified = self.balls_partition_space()?;
        }
        Ok(report)
    }

    /// The counting identity alone; `exhaustive_partition_verified` is false.
    pub fn packing_report(&self) -> Result<PerfectnessReport> {
        if self.t != 0 {
            return Err(Error::SingleRowOnly {
                op: "perfectness verification",
                t: self.t,
            });
        }
        let p = self.field.p();
        let n = self.n;
        let codeword_count = self.codeword_count();
        let ball_size = 6 * n as u64 + 1;
        let space_size = BigUint::from(p).pow(n as u32);
        let packing_identity_holds = &codeword_count * ball_size == space_size;
        Ok(PerfectnessReport {
            p,
            n,
            codeword_count,
            ball_size,
            space_size,
            packing_identity_holds,
            exhaustive_partition_verified: false,
        })
    }

    /// Enumerates every codeword, marks every word at graph distance at most
    /// one from it, and checks each of the `p^n` words was marked exactly once.
    fn balls_partition_space(&self) -> Result<bool> {
        let p = self.field.p();
        let n = self.n;
        // Single-coordinate steps of graph weight one.
        let graph = graph_weights(&self.field);
        let steps: Vec<usize> = (0..p).filter(|&l| graph[l] == 1).collect();
        let place: Vec<usize> = (0..n).map(|i| p.pow(i as u32)).collect();
        let space = p.pow(n as u32);

        let mut hits = vec![0u8; space];
        for c in self.codewords()? {
            let index: usize = c.iter().zip(&place).map(|(ci, w)| ci * w).sum();
            hits[index] = hits[index].saturating_add(1);
            for i in 0..n {
                for &s in &steps {
                    let moved = (c[i] + s) % p;
                    let idx = index - c[i] * place[i] + moved * place[i];
                    hits[idx] = hits[idx].saturating_add(1);
                }
            }
        }
        Ok(hits.iter().all(|&h| h == 1))
    }
}
