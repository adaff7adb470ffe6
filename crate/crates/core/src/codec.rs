//! Determinant-checksum encoding and decoding.
//!
//! Encoding maps each block `B_i` to a row `(det B_i, k1, k2, k3)` holding
//! three of its elements. Decoding multiplies the kept top row by the key
//! matrix `K` to get the helper products `e1, e2`, then solves the linear
//! equation `det(K)·d = det(B·K)` for the dropped element.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::alphabet::{AlphabetRegistry, CharTable, Code};
use crate::error::{Error, Result, TamperReason};
use crate::layout::{self, choose_n, Block, MessageMatrix, NRule};
use crate::numtheory::{key_determinant, q_power, r_matrix, KeyFamily, KeyMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Keeps `b1, b2, b4`; recovers `b3` with `R_n`. Pivot is `b2`.
    LucasBlocking,
    /// Keeps `b1, b2, b3`; recovers `b4` with `Q^n` on odd blocks and `R_n`
    /// on even blocks. Pivot is `b1`.
    Minesweeper,
}

impl Scheme {
    pub fn as_str(&self) -> &'static str {
        match self {
            Scheme::LucasBlocking => "lucas",
            Scheme::Minesweeper => "mine",
        }
    }

    /// Key family used for the 1-based block `index`.
    pub fn key_family(&self, index: usize) -> KeyFamily {
        match self {
            Scheme::LucasBlocking => KeyFamily::RMat,
            Scheme::Minesweeper if index % 2 == 1 => KeyFamily::QPow,
            Scheme::Minesweeper => KeyFamily::RMat,
        }
    }

    /// The element whose nonzeroness makes the dropped one recoverable.
    pub fn pivot(&self, block: &Block) -> Code {
        match self {
            Scheme::LucasBlocking => block.b2,
            Scheme::Minesweeper => block.b1,
        }
    }

    fn kept(&self, block: &Block) -> [Code; 3] {
        match self {
            Scheme::LucasBlocking => [block.b1, block.b2, block.b4],
            Scheme::Minesweeper => [block.b1, block.b2, block.b3],
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One encoded block: determinant plus the kept elements in block order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FRow {
    pub d: i64,
    pub k1: i64,
    pub k2: i64,
    pub k3: i64,
}

impl FRow {
    pub fn new(d: i64, k1: i64, k2: i64, k3: i64) -> Self {
        Self { d, k1, k2, k3 }
    }

    pub fn fields(&self) -> [i64; 4] {
        [self.d, self.k1, self.k2, self.k3]
    }
}

impl fmt::Display for FRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.d, self.k1, self.k2, self.k3)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodedMessage {
    pub scheme: Scheme,
    pub n_rule: NRule,
    pub dim: usize,
    pub alphabet_id: String,
    pub rows: Vec<FRow>,
}

impl CodedMessage {
    /// Checks that `dim` is even and positive and matches the row count.
    pub fn check_header(&self) -> Result<()> {
        if self.dim < 2 || !self.dim.is_multiple_of(2) {
            return Err(Error::HeaderMismatch(format!(
                "dim={} is not an even value >= 2",
                self.dim
            )));
        }
        let expected = (self.dim / 2) * (self.dim / 2);
        if self.rows.len() != expected {
            return Err(Error::HeaderMismatch(format!(
                "dim={} needs {expected} rows, found {}",
                self.dim,
                self.rows.len()
            )));
        }
        Ok(())
    }

    /// Key index derived from the row count and the n-rule.
    pub fn key_index(&self) -> Result<u64> {
        self.check_header()?;
        Ok(choose_n(self.rows.len(), self.n_rule))
    }

    /// The character table the sender used.
    pub fn char_table(&self, registry: &AlphabetRegistry) -> Result<CharTable> {
        let n = self.key_index()?;
        let alphabet = registry.get(&self.alphabet_id)?;
        Ok(CharTable::new(alphabet.clone(), n))
    }
}

/// Decode-side intermediates for one block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTrace {
    pub index: usize,
    pub key: KeyMatrix,
    pub e1: BigInt,
    pub e2: BigInt,
    pub x: Code,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeTrace {
    pub n: u64,
    pub blocks: Vec<BlockTrace>,
}

pub fn encode(
    matrix: &MessageMatrix,
    scheme: Scheme,
    n_rule: NRule,
    alphabet_id: &str,
) -> Result<CodedMessage> {
    let blocks = layout::to_blocks(matrix);
    let degenerate: Vec<usize> = blocks
        .iter()
        .filter(|b| scheme.pivot(b) == 0)
        .map(|b| b.index)
        .collect();
    if !degenerate.is_empty() {
        return Err(Error::DegenerateBlock(degenerate));
    }
    let rows = blocks
        .iter()
        .map(|b| {
            let [k1, k2, k3] = scheme.kept(b).map(i64::from);
            FRow::new(b.det(), k1, k2, k3)
        })
        .collect();
    Ok(CodedMessage {
        scheme,
        n_rule,
        dim: matrix.dim(),
        alphabet_id: alphabet_id.to_string(),
        rows,
    })
}

/// Recovers `b3` of a Lucas-blocking row using `R_n`.
pub fn solve_missing_lucas(row: &FRow, n: u64, index: usize, alphabet_size: u32) -> Result<Code> {
    let key = r_matrix(n)?;
    solve_block(Scheme::LucasBlocking, row, &key, index, alphabet_size).map(|t| t.x)
}

/// Recovers `b4` of a minesweeper row using `Q^n` (odd `index`) or `R_n`
/// (even `index`).
pub fn solve_missing_mine(row: &FRow, n: u64, index: usize, alphabet_size: u32) -> Result<Code> {
    let key = KeyMatrix::new(Scheme::Minesweeper.key_family(index), n)?;
    solve_block(Scheme::Minesweeper, row, &key, index, alphabet_size).map(|t| t.x)
}

fn tamper(block: usize, reason: TamperReason) -> Error {
    Error::TamperDetected { block, reason }
}

fn solve_block(
    scheme: Scheme,
    row: &FRow,
    key: &KeyMatrix,
    index: usize,
    alphabet_size: u32,
) -> Result<BlockTrace> {
    for k in [row.k1, row.k2, row.k3] {
        if k < 0 || k >= i64::from(alphabet_size) {
            return Err(tamper(index, TamperReason::KeptOutOfRange(k)));
        }
    }
    let (m11, m12, m21, m22) = (key.m11(), key.m12(), key.m21(), key.m22());
    let b1 = BigInt::from(row.k1);
    let b2 = BigInt::from(row.k2);
    let e1 = m11 * &b1 + m21 * &b2;
    let e2 = m12 * &b1 + m22 * &b2;
    let lhs = BigInt::from(key_determinant(key.family(), key.n())) * BigInt::from(row.d);

    // det(K)·d = det([[b1, b2], [b3, b4]]·K) written as coef·x + constant,
    // where the second row of the product is (b3·m11 + b4·m21, b3·m12 + b4·m22).
    let third = BigInt::from(row.k3);
    let (coef, constant) = match scheme {
        // Unknown b3, known b4 = k3.
        Scheme::LucasBlocking => (&e1 * m12 - &e2 * m11, &third * (&e1 * m22 - &e2 * m21)),
        // Known b3 = k3, unknown b4.
        Scheme::Minesweeper => (&e1 * m22 - &e2 * m21, &third * (&e1 * m12 - &e2 * m11)),
    };
    if coef.is_zero() {
        return Err(tamper(index, TamperReason::ZeroPivot));
    }
    let (x, rem) = (lhs - constant).div_rem(&coef);
    if !rem.is_zero() {
        return Err(tamper(index, TamperReason::InexactSolution));
    }
    if x.is_negative() || x >= BigInt::from(alphabet_size) {
        let shown = x.to_i128().unwrap_or(if x.is_negative() {
            i128::MIN
        } else {
            i128::MAX
        });
        return Err(tamper(index, TamperReason::OutOfRange(shown)));
    }
    let x = x.to_u32().expect("x is below the alphabet size");

    let block = rebuild(scheme, row, x, index);
    debug_assert_eq!(Some(x), direct_solution(scheme, row));
    let actual = block.det();
    if actual != row.d {
        return Err(tamper(
            index,
            TamperReason::DeterminantMismatch {
                expected: row.d,
                actual,
            },
        ));
    }
    Ok(BlockTrace {
        index,
        key: key.clone(),
        e1,
        e2,
        x,
    })
}

/// Dropped element from the block determinant alone: `b3 = (b1·b4 - d)/b2`
/// or `b4 = (d + b2·b3)/b1`. `None` when the division is not exact or the
/// pivot is zero.
pub fn direct_solution(scheme: Scheme, row: &FRow) -> Option<Code> {
    let (num, den) = match scheme {
        Scheme::LucasBlocking => (
            i128::from(row.k1) * i128::from(row.k3) - i128::from(row.d),
            i128::from(row.k2),
        ),
        Scheme::Minesweeper => (
            i128::from(row.d) + i128::from(row.k2) * i128::from(row.k3),
            i128::from(row.k1),
        ),
    };
    if den == 0 || num % den != 0 {
        return None;
    }
    Code::try_from(num / den).ok()
}

fn rebuild(scheme: Scheme, row: &FRow, x: Code, index: usize) -> Block {
    // Kept values were range-checked by the caller.
    let [k1, k2, k3] = [row.k1, row.k2, row.k3].map(|k| k as Code);
    match scheme {
        Scheme::LucasBlocking => Block {
            index,
            b1: k1,
            b2: k2,
            b3: x,
            b4: k3,
        },
        Scheme::Minesweeper => Block {
            index,
            b1: k1,
            b2: k2,
            b3: k3,
            b4: x,
        },
    }
}

pub fn decode(coded: &CodedMessage, table: &CharTable) -> Result<MessageMatrix> {
    decode_with_trace(coded, table).map(|(m, _)| m)
}

/// Decodes and returns the per-block intermediates alongside the matrix.
pub fn decode_with_trace(
    coded: &CodedMessage,
    table: &CharTable,
) -> Result<(MessageMatrix, DecodeTrace)> {
    let n = coded.key_index()?;
    if coded.alphabet_id != table.alphabet().id() {
        return Err(Error::HeaderMismatch(format!(
            "payload alphabet {:?} but table alphabet {:?}",
            coded.alphabet_id,
            table.alphabet().id()
        )));
    }
    let size = table.size();
    if table.shift() % u64::from(size) != n % u64::from(size) {
        return Err(Error::HeaderMismatch(format!(
            "table shift {} does not match key index {n}",
            table.shift()
        )));
    }
    let r = r_matrix(n)?;
    let q = match coded.scheme {
        Scheme::Minesweeper => Some(q_power(n)?),
        Scheme::LucasBlocking => None,
    };

    let mut blocks = Vec::with_capacity(coded.rows.len());
    let mut traces = Vec::with_capacity(coded.rows.len());
    for (k, row) in coded.rows.iter().enumerate() {
        let index = k + 1;
        let key = match coded.scheme.key_family(index) {
            KeyFamily::RMat => &r,
            KeyFamily::QPow => q.as_ref().expect("Q key computed for minesweeper"),
        };
        let trace = solve_block(coded.scheme, row, key, index, size)?;
        blocks.push(rebuild(coded.scheme, row, trace.x, index));
        traces.push(trace);
    }
    let matrix = layout::reassemble(&blocks, coded.dim)?;
    Ok((matrix, DecodeTrace { n, blocks: traces }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;

    fn ex1_matrix() -> MessageMatrix {
        MessageMatrix::new(
            4,
            vec![9, 10, 29, 28, 9, 16, 24, 28, 2, 19, 6, 28, 26, 16, 22, 0],
        )
        .unwrap()
    }

    fn rows(v: &[[i64; 4]]) -> Vec<FRow> {
        v.iter()
            .map(|r| FRow::new(r[0], r[1], r[2], r[3]))
            .collect()
    }

    #[test]
    fn encode_example_1() {
        let c = encode(&ex1_matrix(), Scheme::LucasBlocking, NRule::Half, "default").unwrap();
        assert_eq!(
            c.rows,
            rows(&[
                [54, 9, 10, 16],
                [140, 29, 28, 28],
                [-462, 2, 19, 16],
                [-616, 6, 28, 0]
            ])
        );
        assert_eq!(c.key_index().unwrap(), 2);
    }

    #[test]
    fn encode_all_ones() {
        let m = MessageMatrix::new(2, vec![1, 1, 1, 1]).unwrap();
        let c = encode(&m, Scheme::LucasBlocking, NRule::Half, "default").unwrap();
        assert_eq!(c.rows, rows(&[[0, 1, 1, 1]]));
    }

    #[test]
    fn encode_degenerate() {
        let m =
            MessageMatrix::new(4, vec![1, 0, 1, 1, 1, 1, 1, 1, 0, 0, 1, 0, 1, 1, 1, 1]).unwrap();
        assert_eq!(
            encode(&m, Scheme::LucasBlocking, NRule::Half, "default"),
            Err(Error::DegenerateBlock(vec![1, 3, 4]))
        );
        assert_eq!(
            encode(&m, Scheme::Minesweeper, NRule::Half, "default"),
            Err(Error::DegenerateBlock(vec![3]))
        );
    }

    #[test]
    fn lucas_solver_examples() {
        assert_eq!(
            solve_missing_lucas(&FRow::new(54, 9, 10, 16), 2, 1, 30).unwrap(),
            9
        );
        assert_eq!(
            solve_missing_lucas(&FRow::new(140, 29, 28, 28), 2, 2, 30).unwrap(),
            24
        );
        assert_eq!(
            solve_missing_lucas(&FRow::new(-616, 6, 28, 0), 2, 4, 30).unwrap(),
            22
        );
        assert_eq!(
            solve_missing_lucas(&FRow::new(55, 9, 10, 16), 2, 1, 30),
            Err(Error::TamperDetected {
                block: 1,
                reason: TamperReason::InexactSolution
            })
        );
    }

    #[test]
    fn mine_solver_examples() {
        assert_eq!(
            solve_missing_mine(&FRow::new(96, 16, 12, 16), 4, 1, 30).unwrap(),
            18
        );
        assert_eq!(
            solve_missing_mine(&FRow::new(160, 27, 8, 7), 4, 2, 30).unwrap(),
            8
        );
        assert_eq!(
            solve_missing_mine(&FRow::new(-357, 12, 17, 21), 4, 4, 30).unwrap(),
            0
        );
        assert_eq!(
            solve_missing_mine(&FRow::new(0, 4, 19, 0), 4, 9, 30).unwrap(),
            0
        );
    }

    #[test]
    fn solver_rejects_out_of_range() {
        // (9·16 - 4)/10 = 14 is fine; (9·16 - (-206))/10 = 35 is not a code.
        assert_eq!(
            solve_missing_lucas(&FRow::new(4, 9, 10, 16), 2, 1, 30).unwrap(),
            14
        );
        assert_eq!(
            solve_missing_lucas(&FRow::new(-206, 9, 10, 16), 2, 1, 30),
            Err(Error::TamperDetected {
                block: 1,
                reason: TamperReason::OutOfRange(35)
            })
        );
    }

    #[test]
    fn solver_rejects_zero_pivot_and_bad_kept() {
        assert_eq!(
            solve_missing_lucas(&FRow::new(0, 3, 0, 0), 2, 1, 30),
            Err(Error::TamperDetected {
                block: 1,
                reason: TamperReason::ZeroPivot
            })
        );
        assert_eq!(
            solve_missing_mine(&FRow::new(0, 3, 30, 0), 2, 1, 30),
            Err(Error::TamperDetected {
                block: 1,
                reason: TamperReason::KeptOutOfRange(30)
            })
        );
    }

    #[test]
    fn decode_example_1_with_trace() {
        let c = encode(&ex1_matrix(), Scheme::LucasBlocking, NRule::Half, "default").unwrap();
        let table = CharTable::new(Alphabet::standard(), 2);
        let (m, trace) = decode_with_trace(&c, &table).unwrap();
        assert_eq!(m, ex1_matrix());
        let e1: Vec<_> = trace.blocks.iter().map(|t| t.e1.clone()).collect();
        let e2: Vec<_> = trace.blocks.iter().map(|t| t.e2.clone()).collect();
        assert_eq!(e1, [66, 200, 65, 108].map(BigInt::from));
        assert_eq!(e2, [37, 115, 25, 46].map(BigInt::from));
        assert_eq!(layout::render(&m, &table).unwrap(), "HI!0HOW0ARE0YOU?");
    }

    #[test]
    fn decode_header_checks() {
        let mut c = encode(&ex1_matrix(), Scheme::LucasBlocking, NRule::Half, "default").unwrap();
        let table = CharTable::new(Alphabet::standard(), 2);
        assert!(matches!(
            decode(&c, &CharTable::new(Alphabet::standard(), 3)),
            Err(Error::HeaderMismatch(_))
        ));
        c.rows.pop();
        assert!(matches!(decode(&c, &table), Err(Error::HeaderMismatch(_))));
    }

    #[test]
    fn decode_reports_first_tampered_block() {
        let mut c = encode(&ex1_matrix(), Scheme::LucasBlocking, NRule::Half, "default").unwrap();
        c.rows[2].d += 3;
        let table = CharTable::new(Alphabet::standard(), 2);
        assert!(matches!(
            decode(&c, &table),
            Err(Error::TamperDetected { block: 3, .. })
        ));
    }

    #[test]
    fn direct_solution_matches() {
        assert_eq!(
            direct_solution(Scheme::LucasBlocking, &FRow::new(54, 9, 10, 16)),
            Some(9)
        );
        assert_eq!(
            direct_solution(Scheme::Minesweeper, &FRow::new(96, 16, 12, 16)),
            Some(18)
        );
        assert_eq!(
            direct_solution(Scheme::LucasBlocking, &FRow::new(55, 9, 10, 16)),
            None
        );
    }
}
