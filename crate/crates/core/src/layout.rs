//! Message matrices, 2×2 blocking and the key-index rule.

use std::fmt;

use crate::alphabet::{Alphabet, CharTable, Code};
use crate::error::{Error, Result};

/// Symbol written for each space and used as padding.
pub const PAD_SYMBOL: char = '0';

/// How the key index `n` is derived from the block count `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum NRule {
    /// `n = b` for `b <= 3`, else `floor(b / 2)`.
    #[default]
    Half,
    /// `n = 3` for `b <= 3`, else `b`.
    Tas,
}

impl NRule {
    pub fn as_str(&self) -> &'static str {
        match self {
            NRule::Half => "half",
            NRule::Tas => "tas",
        }
    }
}

impl fmt::Display for NRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn choose_n(b: usize, rule: NRule) -> u64 {
    debug_assert!(b >= 1);
    let b = b as u64;
    match rule {
        NRule::Half if b <= 3 => b,
        NRule::Half => b / 2,
        NRule::Tas if b <= 3 => 3,
        NRule::Tas => b,
    }
}

/// Square grid of codes with even dimension, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MessageMatrix {
    dim: usize,
    cells: Vec<Code>,
}

impl MessageMatrix {
    pub fn new(dim: usize, cells: Vec<Code>) -> Result<Self> {
        if dim < 2 || !dim.is_multiple_of(2) {
            return Err(Error::BadLength(format!(
                "dimension {dim} is not even and >= 2"
            )));
        }
        if cells.len() != dim * dim {
            return Err(Error::BadLength(format!(
                "{} cells for dimension {dim}",
                cells.len()
            )));
        }
        Ok(Self { dim, cells })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cells(&self) -> &[Code] {
        &self.cells
    }

    pub fn get(&self, row: usize, col: usize) -> Code {
        self.cells[row * self.dim + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Code]> {
        self.cells.chunks(self.dim)
    }

    /// Number of 2×2 blocks, `(dim/2)^2`.
    pub fn block_count(&self) -> usize {
        (self.dim / 2) * (self.dim / 2)
    }
}

/// A 2×2 block `[[b1, b2], [b3, b4]]` with its 1-based index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    pub index: usize,
    pub b1: Code,
    pub b2: Code,
    pub b3: Code,
    pub b4: Code,
}

impl Block {
    pub fn det(&self) -> i64 {
        i64::from(self.b1) * i64::from(self.b4) - i64::from(self.b2) * i64::from(self.b3)
    }

    pub fn elements(&self) -> [Code; 4] {
        [self.b1, self.b2, self.b3, self.b4]
    }
}

/// Smallest even dimension whose square holds `len` symbols.
pub fn dim_for_len(len: usize) -> usize {
    let mut dim = 2;
    while dim * dim < len {
        dim += 2;
    }
    dim
}

/// Uppercases `text`, writes each space as `'0'` and pads with `'0'` to the
/// smallest even square.
pub fn preprocess(text: &str, alphabet: &Alphabet) -> Result<Vec<char>> {
    if text.is_empty() {
        return Err(Error::EmptyMessage);
    }
    let mut out = Vec::with_capacity(text.len());
    for c in text.chars().flat_map(char::to_uppercase) {
        let c = if c == ' ' { PAD_SYMBOL } else { c };
        if !alphabet.contains(c) {
            return Err(Error::UnknownSymbol(c));
        }
        out.push(c);
    }
    let dim = dim_for_len(out.len());
    out.resize(dim * dim, PAD_SYMBOL);
    Ok(out)
}

/// Preprocesses `text` and lays it out with the character table for the key
/// index the n-rule assigns to its block count.
pub fn layout_text(
    text: &str,
    alphabet: &Alphabet,
    rule: NRule,
) -> Result<(MessageMatrix, CharTable)> {
    let symbols = preprocess(text, alphabet)?;
    let dim = dim_for_len(symbols.len());
    let table = CharTable::new(alphabet.clone(), choose_n((dim / 2) * (dim / 2), rule));
    let matrix = to_matrix(&symbols, &table)?;
    Ok((matrix, table))
}

pub fn to_matrix(symbols: &[char], table: &CharTable) -> Result<MessageMatrix> {
    let len = symbols.len();
    let dim = dim_for_len(len);
    if dim * dim != len {
        return Err(Error::BadLength(format!(
            "{len} symbols is not an even square"
        )));
    }
    let cells = symbols
        .iter()
        .map(|&s| table.code_of(s))
        .collect::<Result<Vec<_>>>()?;
    MessageMatrix::new(dim, cells)
}

/// Splits the matrix into 2×2 blocks, left to right, then top to bottom.
pub fn to_blocks(matrix: &MessageMatrix) -> Vec<Block> {
    let half = matrix.dim / 2;
    let mut blocks = Vec::with_capacity(half * half);
    for br in 0..half {
        for bc in 0..half {
            let (r, c) = (2 * br, 2 * bc);
            blocks.push(Block {
                index: blocks.len() + 1,
                b1: matrix.get(r, c),
                b2: matrix.get(r, c + 1),
                b3: matrix.get(r + 1, c),
                b4: matrix.get(r + 1, c + 1),
            });
        }
    }
    blocks
}

pub fn reassemble(blocks: &[Block], dim: usize) -> Result<MessageMatrix> {
    if dim < 2 || !dim.is_multiple_of(2) {
        return Err(Error::BadLength(format!(
            "dimension {dim} is not even and >= 2"
        )));
    }
    let half = dim / 2;
    if blocks.len() != half * half {
        return Err(Error::BadLength(format!(
            "{} blocks for dimension {dim}",
            blocks.len()
        )));
    }
    let mut cells = vec![0; dim * dim];
    for (k, block) in blocks.iter().enumerate() {
        let (r, c) = (2 * (k / half), 2 * (k % half));
        cells[r * dim + c] = block.b1;
        cells[r * dim + c + 1] = block.b2;
        cells[(r + 1) * dim + c] = block.b3;
        cells[(r + 1) * dim + c + 1] = block.b4;
    }
    MessageMatrix::new(dim, cells)
}

/// Reads the matrix back as symbols, row-major.
pub fn render(matrix: &MessageMatrix, table: &CharTable) -> Result<String> {
    matrix
        .cells()
        .iter()
        .map(|&c| table.symbol_of(i64::from(c)))
        .collect()
}
