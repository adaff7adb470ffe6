//! Pinned values for the two worked examples.
//!
//! Example 2 block 9 is `[[4, 19], [0, 0]]`: `P` codes to 19 under shift 4,
//! so its helper products are `e1 = 77`, `e2 = 50`.

use fibcodec::{NRule, Scheme};

pub struct Golden {
    pub text: &'static str,
    pub scheme: Scheme,
    pub n_rule: NRule,
    pub n: u64,
    pub grid: &'static [u32],
    pub rows: &'static [[i64; 4]],
    pub e1: &'static [i64],
    pub e2: &'static [i64],
    pub x: &'static [u32],
    pub rendered: &'static str,
}

pub const EXAMPLE_1: Golden = Golden {
    text: "HI! HOW ARE YOU?",
    scheme: Scheme::LucasBlocking,
    n_rule: NRule::Half,
    n: 2,
    grid: &[9, 10, 29, 28, 9, 16, 24, 28, 2, 19, 6, 28, 26, 16, 22, 0],
    rows: &[
        [54, 9, 10, 16],
        [140, 29, 28, 28],
        [-462, 2, 19, 16],
        [-616, 6, 28, 0],
    ],
    e1: &[66, 200, 65, 108],
    e2: &[37, 115, 25, 46],
    x: &[9, 24, 26, 22],
    rendered: "HI!0HOW0ARE0YOU?",
};

pub const EXAMPLE_2: Golden = Golden {
    text: "MIXED MODELLING FOR CRYPTOGRAPHY",
    scheme: Scheme::Minesweeper,
    n_rule: NRule::Half,
    n: 4,
    grid: &[
        16, 12, 27, 8, 7, 0, //
        16, 18, 7, 8, 15, 15, //
        12, 17, 10, 0, 9, 18, //
        21, 0, 6, 21, 28, 19, //
        23, 18, 10, 21, 4, 19, //
        11, 28, 0, 0, 0, 0,
    ],
    rows: &[
        [96, 16, 12, 16],
        [160, 27, 8, 7],
        [105, 7, 0, 15],
        [-357, 12, 17, 21],
        [210, 10, 0, 6],
        [-333, 9, 18, 28],
        [446, 23, 18, 11],
        [0, 10, 21, 0],
        [0, 4, 19, 0],
    ],
    e1: &[116, 353, 35, 251, 50, 225, 169, 257, 77],
    e2: &[72, 221, 21, 152, 30, 135, 105, 154, 50],
    x: &[18, 8, 15, 0, 21, 19, 28, 0, 0],
    rendered: "MIXED0MODELLING0FOR0CRYPTOGRAPHY0000",
};
