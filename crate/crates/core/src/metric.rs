//! Weights and distances on `A_p[w]` and the metric-axiom auditor.
//!
//! Three weights are tracked side by side:
//!
//! - [`WeightKind::Original`]: `|x| + |y|` of the minimal-norm representative.
//!   This is not a metric source; it breaks the triangle inequality at `p = 193`.
//! - [`WeightKind::Corrected`]: `min(|x| + |y|, |x'| + |y'|)` over the `w` and
//!   `wb` presentations of the representative.
//! - [`WeightKind::Graph`]: shortest-path length from `0` in the Cayley graph
//!   whose generators are the six unit classes. This is the metric of record.
//!
//! Every distance is `weight(class of a - b)`, so a [`WeightTable`] holds one
//! array per kind and all distance queries are lookups.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::ResidueField;
use crate::Label;

/// Default largest `p` for which an exhaustive triangle scan is allowed.
pub const EXHAUSTIVE_AUDIT_LIMIT: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeightKind {
    #[serde(rename = "wM")]
    Original,
    #[serde(rename = "wm")]
    Corrected,
    #[serde(rename = "graph")]
    Graph,
}

impl WeightKind {
    pub const ALL: [WeightKind; 3] = [
        WeightKind::Original,
        WeightKind::Corrected,
        WeightKind::Graph,
    ];

    pub fn name(self) -> &'static str {
        match self {
            WeightKind::Original => "wM",
            WeightKind::Corrected => "wm",
            WeightKind::Graph => "graph",
        }
    }
}

impl fmt::Display for WeightKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WeightKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        WeightKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse {
                what: "weight kind",
                input: s.to_string(),
            })
    }
}

/// `|x| + |y|` of the canonical representative.
pub fn weight_original(field: &ResidueField, l: Label) -> Result<u32> {
    Ok(field.representative(l)?.w_coord_sum() as u32)
}

/// Smaller coefficient sum over the `w` and `wb` presentations.
pub fn weight_corrected(field: &ResidueField, l: Label) -> Result<u32> {
    let rep = field.representative(l)?;
    Ok(rep.w_coord_sum().min(rep.wbar_coord_sum()) as u32)
}

/// Breadth-first distances from `0` in the Cayley graph generated by the unit
/// classes. Neighbours are visited in canonical unit order.
pub fn graph_weights(field: &ResidueField) -> Vec<u32> {
    let p = field.p();
    let units = field.unit_labels();
    let mut dist = vec![u32::MAX; p];
    let mut queue = VecDeque::from([0]);
    dist[0] = 0;
    while let Some(v) = queue.pop_front() {
        for u in units {
            let next = (v + u) % p;
            if dist[next] == u32::MAX {
                dist[next] = dist[v] + 1;
                queue.push_back(next);
            }
        }
    }
    dist
}

/// Per-label weights of a field under all three kinds.
#[derive(Debug, Clone)]
pub struct WeightTable {
    p: usize,
    original: Vec<u32>,
    corrected: Vec<u32>,
    graph: Vec<u32>,
}

impl WeightTable {
    pub fn new(field: &ResidueField) -> Self {
        let p = field.p();
        let original = (0..p).map(|l| weight_original(field, l).unwrap()).collect();
        let corrected = (0..p)
            .map(|l| weight_corrected(field, l).unwrap())
            .collect();
        WeightTable {
            p,
            original,
            corrected,
            graph: graph_weights(field),
        }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn weights(&self, kind: WeightKind) -> &[u32] {
        match kind {
            WeightKind::Original => &self.original,
            WeightKind::Corrected => &self.corrected,
            WeightKind::Graph => &self.graph,
        }
    }

    fn check(&self, l: Label) -> Result<()> {
        if l < self.p {
            Ok(())
        } else {
            Err(Error::LabelOutOfRange {
                label: l,
                p: self.p,
            })
        }
    }

    pub fn weight(&self, kind: WeightKind, l: Label) -> Result<u32> {
        self.check(l)?;
        Ok(self.weights(kind)[l])
    }

    /// Weight of the class of `a - b`.
    pub fn distance(&self, kind: WeightKind, a: Label, b: Label) -> Result<u32> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.dist_unchecked(self.weights(kind), a, b))
    }

    #[inline]
    fn dist_unchecked(&self, w: &[u32], a: Label, b: Label) -> u32 {
        w[(a + self.p - b) % self.p]
    }

    /// Coordinate-wise sum of distances. For [`WeightKind::Graph`] this is the
    /// shortest-path distance in the product graph where one edge adds a unit
    /// to a single coordinate.
    pub fn word_distance(&self, kind: WeightKind, u: &[Label], v: &[Label]) -> Result<u64> {
        if u.len() != v.len() {
            return Err(Error::LengthMismatch {
                expected: u.len(),
                actual: v.len(),
            });
        }
        u.iter()
            .zip(v)
            .map(|(&a, &b)| self.distance(kind, a, b).map(u64::from))
            .sum()
    }

    /// Labels whose weight under `kind` equals one, in ascending order.
    pub fn weight_one_labels(&self, kind: WeightKind) -> Vec<Label> {
        (0..self.p)
            .filter(|&l| self.weights(kind)[l] == 1)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axiom {
    Identity,
    Symmetry,
    Triangle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    fn from_count(violations: u64) -> Self {
        if violations == 0 {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AxiomOutcomes {
    pub identity: Outcome,
    pub symmetry: Outcome,
    pub triangle: Outcome,
}

/// A replayable certificate that one axiom fails.
///
/// - identity: `labels = [a, b]`, `distances = [d(a,b)]`
/// - symmetry: `labels = [a, b]`, `distances = [d(a,b), d(b,a)]`
/// - triangle: `labels = [a, b, c]`, `distances = [d(a,b), d(a,c), d(c,b)]`
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub labels: Vec<Label>,
    pub distances: Vec<u32>,
}

impl Violation {
    /// Recomputes the distances and checks that they still witness a failure.
    pub fn replay(&self, table: &WeightTable, kind: WeightKind) -> bool {
        let d = |a, b| table.distance(kind, a, b).ok();
        match (self.axiom, self.labels.as_slice()) {
            (Axiom::Identity, &[a, b]) => {
                d(a, b).is_some_and(|ab| vec![ab] == self.distances && (ab == 0) != (a == b))
            }
            (Axiom::Symmetry, &[a, b]) => match (d(a, b), d(b, a)) {
                (Some(ab), Some(ba)) => vec![ab, ba] == self.distances && ab != ba,
                _ => false,
            },
            (Axiom::Triangle, &[a, b, c]) => match (d(a, b), d(a, c), d(c, b)) {
                (Some(ab), Some(ac), Some(cb)) => {
                    vec![ab, ac, cb] == self.distances && ab > ac + cb
                }
                _ => false,
            },
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AuditMode {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetricAuditReport {
    pub kind: WeightKind,
    pub p: usize,
    pub mode: AuditMode,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub axioms: AxiomOutcomes,
    /// Smallest violation in scan order: identity before symmetry before
    /// triangle, then ascending label tuples.
    pub first_violation: Option<Violation>,
    pub violation_count: u64,
}

impl MetricAuditReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

#[derive(Debug, Default, Clone)]
struct Tally {
    counts: [u64; 3],
    first: Option<Violation>,
}

impl Tally {
    fn record(&mut self, v: impl FnOnce() -> Violation, axiom: Axiom) {
        self.counts[axiom as usize] += 1;
        let v = v();
        if self.first.as_ref().is_none_or(|f| v < *f) {
            self.first = Some(v);
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for i in 0..3 {
            self.counts[i] += other.counts[i];
        }
        self.first = match (self.first, other.first) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self
    }

    fn into_report(
        self,
        kind: WeightKind,
        p: usize,
        mode: AuditMode,
        trials: Option<u64>,
        seed: Option<u64>,
    ) -> MetricAuditReport {
        MetricAuditReport {
            kind,
            p,
            mode,
            trials,
            seed,
            axioms: AxiomOutcomes {
                identity: Outcome::from_count(self.counts[0]),
                symmetry: Outcome::from_count(self.counts[1]),
                triangle: Outcome::from_count(self.counts[2]),
            },
            first_violation: self.first,
            violation_count: self.counts.iter().sum(),
        }
    }
}

impl WeightTable {
    fn check_pair(&self, w: &[u32], a: Label, b: Label, tally: &mut Tally) {
        let ab = self.dist_unchecked(w, a, b);
        if (ab == 0) != (a == b) {
            tally.record(
                || Violation {
                    axiom: Axiom::Identity,
                    labels: vec![a, b],
                    distances: vec![ab],
                },
                Axiom::Identity,
            );
        }
        if a < b {
            let ba = self.dist_unchecked(w, b, a);
            if ab != ba {
                tally.record(
                    || Violation {
                        axiom: Axiom::Symmetry,
                        labels: vec![a, b],
                        distances: vec![ab, ba],
                    },
                    Axiom::Symmetry,
                );
            }
        }
    }

    fn check_triangle(&self, w: &[u32], a: Label, b: Label, c: Label, tally: &mut Tally) {
        let ab = self.dist_unchecked(w, a, b);
        let ac = self.dist_unchecked(w, a, c);
        let cb = self.dist_unchecked(w, c, b);
        if ab > ac + cb {
            tally.record(
                || Violation {
                    axiom: Axiom::Triangle,
                    labels: vec![a, b, c],
                    distances: vec![ab, ac, cb],
                },
                Axiom::Triangle,
            );
        }
    }

    /// Checks identity and symmetry on every pair and the triangle inequality
    /// on every ordered triple. Fails with `LimitExceeded` when `p > limit`.
    pub fn audit_exhaustive(&self, kind: WeightKind, limit: usize) -> Result<MetricAuditReport> {
        if self.p > limit {
            return Err(Error::LimitExceeded {
                what: "p for an exhaustive audit",
                value: self.p.to_string(),
                limit: limit.to_string(),
            });
        }
        let w = self.weights(kind);
        let p = self.p;
        let tally = (0..p)
            .into_par_iter()
            .map(|a| {
                let mut t = Tally::default();
                for b in 0..p {
                    self.check_pair(w, a, b, &mut t);
                    let ab = self.dist_unchecked(w, a, b);
                    for c in 0..p {
                        // Cheap pre-filter before building a certificate.
                        if ab > self.dist_unchecked(w, a, c) + self.dist_unchecked(w, c, b) {
                            self.check_triangle(w, a, b, c, &mut t);
                        }
                    }
                }
                t
            })
            .reduce(Tally::default, Tally::merge);
        Ok(tally.into_report(kind, p, AuditMode::Exhaustive, None, None))
    }

    /// Checks `trials` uniformly drawn triples `(a, b, c)`: identity and
    /// symmetry on `(a, b)`, the triangle inequality on `(a, b, c)`.
    pub fn audit_sampled(&self, kind: WeightKind, trials: u64, seed: u64) -> MetricAuditReport {
        let w = self.weights(kind);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut tally = Tally::default();
        for _ in 0..trials {
            let a = rng.random_range(0..self.p);
            let b = rng.random_range(0..self.p);
            let c = rng.random_range(0..self.p);
            self.check_pair(w, a, b, &mut tally);
            self.check_triangle(w, a, b, c, &mut tally);
        }
        tally.into_report(kind, self.p, AuditMode::Sampled, Some(trials), Some(seed))
    }

    /// Exhaustive for `p <= 43`, otherwise one million seeded samples.
    pub fn audit_default(&self, kind: WeightKind, seed: u64) -> MetricAuditReport {
        if self.p <= 43 {
            self.audit_exhaustive(kind, EXHAUSTIVE_AUDIT_LIMIT)
                .expect("p <= 43 is within the exhaustive limit")
        } else {
            self.audit_sampled(kind, 1_000_000, seed)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightRow {
    pub label: Label,
    #[serde(rename = "w_M")]
    pub w_original: u32,
    #[serde(rename = "w_m")]
    pub w_corrected: u32,
    pub graph: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Disagreements {
    #[serde(rename = "wM_wm")]
    pub original_corrected: usize,
    #[serde(rename = "wM_graph")]
    pub original_graph: usize,
    #[serde(rename = "wm_graph")]
    pub corrected_graph: usize,
}

/// Side-by-side weights for every label of one field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightComparisonReport {
    pub p: usize,
    pub rows: Vec<WeightRow>,
    pub disagreements: Disagreements,
    /// Labels where the corrected coordinate-sum weight exceeds the graph weight.
    pub wm_graph_mismatch_labels: Vec<Label>,
    /// `graph <= w_m <= w_M` on every row.
    pub ordering_holds: bool,
}

impl WeightComparisonReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("label,w_M,w_m,graph\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                r.label, r.w_original, r.w_corrected, r.graph
            ));
        }
        out
    }
}

impl WeightTable {
    pub fn compare(&self) -> WeightComparisonReport {
        let rows: Vec<WeightRow> = (0..self.p)
            .map(|label| WeightRow {
                label,
                w_original: self.original[label],
                w_corrected: self.corrected[label],
                graph: self.graph[label],
            })
            .collect();
        let mut d = Disagreements::default();
        let mut mismatches = Vec::new();
        let mut ordering_holds = true;
        for r in &rows {
            d.original_corrected += usize::from(r.w_original != r.w_corrected);
            d.original_graph += usize::from(r.w_original != r.graph);
            if r.w_corrected != r.graph {
                d.corrected_graph += 1;
                mismatches.push(r.label);
            }
            ordering_holds &= r.graph <= r.w_corrected && r.w_corrected <= r.w_original;
        }
        WeightComparisonReport {
            p: self.p,
            rows,
            disagreements: d,
            wm_graph_mismatch_labels: mismatches,
            ordering_holds,
        }
    }
}
