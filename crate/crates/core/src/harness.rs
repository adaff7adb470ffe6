//! Corruption injection and detection-rate measurement.
//!
//! A trial corrupts an encoded payload in one field, decodes it, and records
//! whether the decoder flagged the payload, silently produced a different
//! matrix, or produced the original matrix. Randomness comes from a seeded
//! ChaCha stream so runs are reproducible.

use std::fmt;
use std::io;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::Alphabet;
use crate::codec::{self, CodedMessage, FRow, Scheme};
use crate::error::{Error, Result, TamperReason};
use crate::layout::{self, NRule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Add a nonzero offset to one row's determinant.
    PerturbD,
    /// Add a nonzero offset, modulo the alphabet size, to one kept element.
    PerturbKept,
    /// Exchange two differing rows.
    SwapRows,
}

impl Strategy {
    pub fn as_str(&self) -> &'static str {
        match self {
            Strategy::PerturbD => "perturb-d",
            Strategy::PerturbKept => "perturb-kept",
            Strategy::SwapRows => "swap-rows",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorruptionSpec {
    pub strategy: Strategy,
    pub magnitude: u32,
    pub seed: u64,
}

/// A concrete edit to a payload. Row indices are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corruption {
    PerturbD {
        row: usize,
        delta: i64,
    },
    /// `slot` is 0, 1 or 2 for `k1`, `k2`, `k3`.
    PerturbKept {
        row: usize,
        slot: usize,
        delta: i64,
    },
    SwapRows {
        a: usize,
        b: usize,
    },
}

impl Corruption {
    pub fn apply(&self, coded: &CodedMessage, alphabet_size: u32) -> Result<CodedMessage> {
        let mut out = coded.clone();
        let check_row = |row: usize| {
            if row < coded.rows.len() {
                Ok(())
            } else {
                Err(Error::InvalidCorruption(format!("row {row} out of bounds")))
            }
        };
        match *self {
            Corruption::PerturbD { row, delta } => {
                check_row(row)?;
                let d = &mut out.rows[row].d;
                *d = d
                    .checked_add(delta)
                    .ok_or_else(|| Error::InvalidCorruption("determinant overflow".into()))?;
            }
            Corruption::PerturbKept { row, slot, delta } => {
                check_row(row)?;
                let r = &mut out.rows[row];
                let k = match slot {
                    0 => &mut r.k1,
                    1 => &mut r.k2,
                    2 => &mut r.k3,
                    _ => return Err(Error::InvalidCorruption(format!("slot {slot}"))),
                };
                let size = i128::from(alphabet_size);
                *k = (i128::from(*k) + i128::from(delta)).rem_euclid(size) as i64;
            }
            Corruption::SwapRows { a, b } => {
                check_row(a)?;
                check_row(b)?;
                out.rows.swap(a, b);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Corruption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Corruption::PerturbD { row, delta } => write!(f, "d[{}] {delta:+}", row + 1),
            Corruption::PerturbKept { row, slot, delta } => {
                write!(f, "k{}[{}] {delta:+}", slot + 1, row + 1)
            }
            Corruption::SwapRows { a, b } => write!(f, "swap {} <-> {}", a + 1, b + 1),
        }
    }
}

fn signed_offset(rng: &mut impl Rng, magnitude: u32) -> i64 {
    let delta = i64::from(rng.gen_range(1..=magnitude));
    if rng.gen_bool(0.5) {
        delta
    } else {
        -delta
    }
}

/// Draws a corruption that changes at least one field of `coded`.
pub fn sample(
    coded: &CodedMessage,
    strategy: Strategy,
    magnitude: u32,
    alphabet_size: u32,
    rng: &mut impl Rng,
) -> Result<Corruption> {
    if magnitude == 0 {
        return Err(Error::InvalidCorruption(
            "magnitude must be at least 1".into(),
        ));
    }
    let rows = coded.rows.len();
    if rows == 0 {
        return Err(Error::InvalidCorruption("no rows".into()));
    }
    match strategy {
        Strategy::PerturbD => Ok(Corruption::PerturbD {
            row: rng.gen_range(0..rows),
            delta: signed_offset(rng, magnitude),
        }),
        Strategy::PerturbKept => {
            let delta = loop {
                let delta = signed_offset(rng, magnitude);
                if delta.rem_euclid(i64::from(alphabet_size)) != 0 {
                    break delta;
                }
            };
            Ok(Corruption::PerturbKept {
                row: rng.gen_range(0..rows),
                slot: rng.gen_range(0..3),
                delta,
            })
        }
        Strategy::SwapRows => {
            if rows < 2 {
                return Err(Error::NotEnoughRows);
            }
            let pairs: Vec<(usize, usize)> = (0..rows)
                .flat_map(|a| (a + 1..rows).map(move |b| (a, b)))
                .filter(|&(a, b)| coded.rows[a] != coded.rows[b])
                .collect();
            if pairs.is_empty() {
                return Err(Error::NotEnoughRows);
            }
            let (a, b) = pairs[rng.gen_range(0..pairs.len())];
            Ok(Corruption::SwapRows { a, b })
        }
    }
}

/// Applies one seeded corruption drawn per `spec`.
pub fn corrupt(
    coded: &CodedMessage,
    spec: &CorruptionSpec,
    alphabet_size: u32,
) -> Result<(CodedMessage, Corruption)> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let corruption = sample(
        coded,
        spec.strategy,
        spec.magnitude,
        alphabet_size,
        &mut rng,
    )?;
    Ok((corruption.apply(coded, alphabet_size)?, corruption))
}

/// For a Lucas-blocking row, whether adding `delta` to `d` slips past the
/// decoder: the offset must be a multiple of the pivot `k2` and the shifted
/// `b3` must remain a valid code.
pub fn lucas_perturb_d_undetected(row: &FRow, delta: i64, alphabet_size: u32) -> bool {
    let pivot = i128::from(row.k2);
    let delta = i128::from(delta);
    if pivot == 0 || delta % pivot != 0 {
        return false;
    }
    let x = (i128::from(row.k1) * i128::from(row.k3) - i128::from(row.d)) / pivot;
    let shifted = x - delta / pivot;
    (0..i128::from(alphabet_size)).contains(&shifted)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Detected {
        block: usize,
        reason: TamperReason,
    },
    /// Decoded cleanly to a different matrix.
    Miscorrected,
    /// Decoded cleanly to the original matrix.
    UndetectedEqual,
}

impl Outcome {
    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Detected { .. } => "detected",
            Outcome::Miscorrected => "miscorrected",
            Outcome::UndetectedEqual => "undetected-equal",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialRecord {
    pub trial: usize,
    pub corruption: Corruption,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetectionReport {
    pub scheme: Scheme,
    pub spec: CorruptionSpec,
    pub trials: usize,
    pub detected: usize,
    pub miscorrected: usize,
    pub undetected_equal: usize,
    pub records: Vec<TrialRecord>,
}

impl DetectionReport {
    pub fn detection_rate(&self) -> f64 {
        self.detected as f64 / self.trials as f64
    }

    /// Writes `trial,strategy,outcome` rows with a header line.
    pub fn write_csv(&self, mut w: impl io::Write) -> io::Result<()> {
        writeln!(w, "trial,strategy,outcome")?;
        for r in &self.records {
            writeln!(
                w,
                "{},{},{}",
                r.trial,
                self.spec.strategy,
                r.outcome.label()
            )?;
        }
        Ok(())
    }
}

impl fmt::Display for DetectionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "scheme={} strategy={} magnitude={} seed={} trials={} detected={} miscorrected={} undetected_equal={} detection_rate={:.4}",
            self.scheme,
            self.spec.strategy,
            self.spec.magnitude,
            self.spec.seed,
            self.trials,
            self.detected,
            self.miscorrected,
            self.undetected_equal,
            self.detection_rate()
        )
    }
}

/// Encodes `text`, then runs `trials` independent corrupt-and-decode rounds
/// drawn from one seeded stream.
pub fn detection_rate(
    text: &str,
    alphabet: &Alphabet,
    scheme: Scheme,
    n_rule: NRule,
    spec: &CorruptionSpec,
    trials: usize,
) -> Result<DetectionReport> {
    if trials == 0 {
        return Err(Error::InvalidCorruption("trials must be at least 1".into()));
    }
    let (matrix, table) = layout::layout_text(text, alphabet, n_rule)?;
    let coded = codec::encode(&matrix, scheme, n_rule, alphabet.id())?;
    let size = alphabet.size();

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut report = DetectionReport {
        scheme,
        spec: *spec,
        trials,
        detected: 0,
        miscorrected: 0,
        undetected_equal: 0,
        records: Vec::with_capacity(trials),
    };
    for trial in 1..=trials {
        let corruption = sample(&coded, spec.strategy, spec.magnitude, size, &mut rng)?;
        let corrupted = corruption.apply(&coded, size)?;
        let outcome = match codec::decode(&corrupted, &table) {
            Ok(m) if m == matrix => Outcome::UndetectedEqual,
            Ok(_) => Outcome::Miscorrected,
            Err(Error::TamperDetected { block, reason }) => Outcome::Detected { block, reason },
            Err(e) => return Err(e),
        };
        match outcome {
            Outcome::Detected { .. } => report.detected += 1,
            Outcome::Miscorrected => report.miscorrected += 1,
            Outcome::UndetectedEqual => report.undetected_equal += 1,
        }
        report.records.push(TrialRecord {
            trial,
            corruption,
            outcome,
        });
    }
    Ok(report)
}
