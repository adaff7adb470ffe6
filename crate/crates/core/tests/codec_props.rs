//! Algebraic properties of the decoder checked over random blocks.

use fibcodec::codec::direct_solution;
use fibcodec::layout::to_blocks;
use fibcodec::{
    decode_with_trace, encode, key_determinant, Alphabet, CharTable, KeyFamily, MessageMatrix,
    NRule, Scheme,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn arb_matrix(scheme: Scheme) -> impl Strategy<Value = MessageMatrix> {
    (1usize..=5).prop_flat_map(move |m| {
        let dim = 2 * m;
        proptest::collection::vec(0u32..30, dim * dim).prop_map(move |mut cells| {
            // Force every pivot nonzero.
            for br in 0..m {
                for bc in 0..m {
                    let at = match scheme {
                        Scheme::LucasBlocking => 2 * br * dim + 2 * bc + 1,
                        Scheme::Minesweeper => 2 * br * dim + 2 * bc,
                    };
                    if cells[at] == 0 {
                        cells[at] = 1;
                    }
                }
            }
            MessageMatrix::new(dim, cells).unwrap()
        })
    })
}

fn check(m: &MessageMatrix, scheme: Scheme, rule: NRule) -> Result<(), TestCaseError> {
    let coded = encode(m, scheme, rule, "default").unwrap();
    let n = coded.key_index().unwrap();
    let table = CharTable::new(Alphabet::standard(), n);
    let (back, trace) = decode_with_trace(&coded, &table).unwrap();
    prop_assert_eq!(&back, m);

    for ((t, row), block) in trace.blocks.iter().zip(&coded.rows).zip(to_blocks(m)) {
        let k = &t.key;
        let det = BigInt::from(key_determinant(k.family(), n));
        prop_assert_eq!(k.determinant(), det.clone());
        prop_assert_eq!(block.det(), row.d);
        match (scheme, k.family()) {
            (Scheme::LucasBlocking, _) => {
                let lhs = &t.e1 * k.m12() - &t.e2 * k.m11();
                prop_assert_eq!(lhs, -BigInt::from(block.b2) * &det);
            }
            (Scheme::Minesweeper, KeyFamily::QPow) => {
                prop_assert_eq!(t.index % 2, 1);
                let lhs = &t.e1 * k.m22() - &t.e2 * k.m21();
                prop_assert_eq!(lhs, BigInt::from(block.b1) * &det);
            }
            (Scheme::Minesweeper, KeyFamily::RMat) => {
                prop_assert_eq!(t.index % 2, 0);
                let lhs = &t.e1 * k.m22() - &t.e2 * k.m21();
                prop_assert_eq!(lhs, BigInt::from(block.b1) * &det);
            }
        }
        prop_assert_eq!(direct_solution(scheme, row), Some(t.x));
    }
    Ok(())
}

proptest! {
    #[test]
    fn lucas_identities(m in arb_matrix(Scheme::LucasBlocking), tas in any::<bool>()) {
        check(&m, Scheme::LucasBlocking, if tas { NRule::Tas } else { NRule::Half })?;
    }

    #[test]
    fn mine_identities(m in arb_matrix(Scheme::Minesweeper), tas in any::<bool>()) {
        check(&m, Scheme::Minesweeper, if tas { NRule::Tas } else { NRule::Half })?;
    }
}
