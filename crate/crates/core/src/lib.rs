//! Block codec built on Fibonacci `Q`-matrices and Lucas `R`-matrices.
//!
//! A message is laid out as an even-sized square matrix of symbol codes and
//! cut into 2×2 blocks. Encoding replaces each block with its determinant
//! plus three of its four elements; decoding recovers the dropped element
//! from the determinant by way of a key matrix (`Q^n` or `R_n = R·Q^n`) and
//! flags payloads whose determinants no longer admit a valid recovery.
//!
//! Two schemes are provided:
//!
//! - [`Scheme::LucasBlocking`] keeps `b1, b2, b4`, recovers `b3` with `R_n`.
//! - [`Scheme::Minesweeper`] keeps `b1, b2, b3`, recovers `b4` with `Q^n` on
//!   odd-indexed blocks and `R_n` on even-indexed blocks.
//!
//! ```
//! use fibcodec::{AlphabetRegistry, NRule, Scheme};
//!
//! let registry = AlphabetRegistry::with_default();
//! let coded = fibcodec::encode_text("HI! HOW ARE YOU?", Scheme::LucasBlocking, NRule::Half,
//!     registry.get("default").unwrap()).unwrap();
//! assert_eq!(coded.rows[0].d, 54);
//! let text = fibcodec::decode_text(&coded, &registry).unwrap();
//! assert_eq!(text, "HI!0HOW0ARE0YOU?");
//! ```

pub mod alphabet;
pub mod codec;
mod error;
pub mod harness;
pub mod layout;
pub mod numtheory;
pub mod wire;

pub use alphabet::{Alphabet, AlphabetRegistry, CharTable, Code, DEFAULT_ALPHABET_ID};
pub use codec::{
    decode, decode_with_trace, encode, BlockTrace, CodedMessage, DecodeTrace, FRow, Scheme,
};
pub use error::{Error, Result, TamperReason};
pub use layout::{choose_n, Block, MessageMatrix, NRule};
pub use numtheory::{fibonacci, key_determinant, lucas, q_power, r_matrix, KeyFamily, KeyMatrix};

/// Preprocesses `text`, lays it out with the key-derived character table and
/// encodes it.
pub fn encode_text(
    text: &str,
    scheme: Scheme,
    n_rule: NRule,
    alphabet: &Alphabet,
) -> Result<CodedMessage> {
    let (matrix, _) = layout::layout_text(text, alphabet, n_rule)?;
    encode(&matrix, scheme, n_rule, alphabet.id())
}

/// Decodes `coded` and renders the recovered matrix back into symbols.
pub fn decode_text(coded: &CodedMessage, registry: &AlphabetRegistry) -> Result<String> {
    let table = coded.char_table(registry)?;
    let matrix = decode(coded, &table)?;
    layout::render(&matrix, &table)
}
