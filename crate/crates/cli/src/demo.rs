use std::fmt::Write as _;

use fibcodec::layout::{self, to_blocks};
use fibcodec::{decode_with_trace, encode, wire, Alphabet, CharTable, MessageMatrix};

use crate::golden::Golden;

pub struct DemoOutput {
    pub report: String,
    pub mismatches: Vec<String>,
}

fn grid(out: &mut String, m: &MessageMatrix, cell: impl Fn(u32) -> String) {
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(|&c| cell(c)).collect();
        let _ = writeln!(out, "  {}", cells.join(" "));
    }
}

fn symbols(out: &mut String, m: &MessageMatrix, table: &CharTable) {
    grid(out, m, |c| {
        table
            .symbol_of(i64::from(c))
            .map(String::from)
            .unwrap_or_else(|_| "?".into())
    });
}

fn codes(out: &mut String, m: &MessageMatrix) {
    grid(out, m, |c| format!("{c:>2}"));
}

/// Runs an example end to end and compares every intermediate against the
/// pinned values.
pub fn run(number: u8, golden: &Golden) -> Result<DemoOutput, fibcodec::Error> {
    let alphabet = Alphabet::standard();
    let (matrix, table) = layout::layout_text(golden.text, &alphabet, golden.n_rule)?;
    let coded = encode(&matrix, golden.scheme, golden.n_rule, alphabet.id())?;
    let (recovered, trace) = decode_with_trace(&coded, &table)?;
    let rendered = layout::render(&recovered, &table)?;

    let mut out = String::new();
    let mut bad = Vec::new();
    let mut check = |what: &str, ok: bool| {
        if !ok {
            bad.push(what.to_string());
        }
    };

    let _ = writeln!(out, "Example {number}: {:?}", golden.text);
    let _ = writeln!(
        out,
        "scheme={} nrule={} dim={} blocks={} n={}",
        coded.scheme,
        coded.n_rule,
        coded.dim,
        coded.rows.len(),
        trace.n
    );
    check("key index n", trace.n == golden.n);

    let _ = writeln!(out, "\nMessage matrix M:");
    symbols(&mut out, &matrix, &table);
    let _ = writeln!(out, "\nCodes (shift {}):", table.shift());
    codes(&mut out, &matrix);
    check("message codes", matrix.cells() == golden.grid);

    let _ = writeln!(out, "\nBlocks:");
    for b in to_blocks(&matrix) {
        let _ = writeln!(
            out,
            "  B{} = [[{}, {}], [{}, {}]]  det = {}",
            b.index,
            b.b1,
            b.b2,
            b.b3,
            b.b4,
            b.det()
        );
    }

    let _ = writeln!(out, "\nF (d, kept elements):");
    for row in &coded.rows {
        let _ = writeln!(out, "  {row}");
    }
    let rows: Vec<[i64; 4]> = coded.rows.iter().map(|r| r.fields()).collect();
    check("F matrix", rows == golden.rows);

    let _ = writeln!(out, "\nPayload:");
    for line in wire::serialize(&coded).lines() {
        let _ = writeln!(out, "  {line}");
    }

    let _ = writeln!(out, "\nDecode trace:");
    let mut keys: Vec<String> = Vec::new();
    for t in &trace.blocks {
        let k = t.key.to_string();
        if !keys.contains(&k) {
            keys.push(k);
        }
    }
    for k in &keys {
        let _ = writeln!(out, "  {k}");
    }
    let _ = writeln!(
        out,
        "  {:>5} {:>4} {:>6} {:>6} {:>4}",
        "block", "key", "e1", "e2", "x"
    );
    for t in &trace.blocks {
        let _ = writeln!(
            out,
            "  {:>5} {:>4} {:>6} {:>6} {:>4}",
            t.index,
            format!("{}{}", t.key.family(), t.key.n()),
            t.e1,
            t.e2,
            t.x
        );
    }
    let e1: Vec<String> = trace.blocks.iter().map(|t| t.e1.to_string()).collect();
    let e2: Vec<String> = trace.blocks.iter().map(|t| t.e2.to_string()).collect();
    let x: Vec<u32> = trace.blocks.iter().map(|t| t.x).collect();
    check(
        "e1 values",
        e1 == golden.e1.iter().map(i64::to_string).collect::<Vec<_>>(),
    );
    check(
        "e2 values",
        e2 == golden.e2.iter().map(i64::to_string).collect::<Vec<_>>(),
    );
    check("recovered x", x == golden.x);

    let _ = writeln!(out, "\nRecovered M:");
    codes(&mut out, &recovered);
    symbols(&mut out, &recovered, &table);
    check("recovered matrix", recovered.cells() == golden.grid);
    let _ = writeln!(out, "\nRecovered text: {rendered}");
    check("recovered text", rendered == golden.rendered);

    let _ = writeln!(
        out,
        "\ngolden check: {}",
        if bad.is_empty() { "OK" } else { "MISMATCH" }
    );
    Ok(DemoOutput {
        report: out,
        mismatches: bad,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden::{EXAMPLE_1, EXAMPLE_2};

    #[test]
    fn both_examples_match() {
        for (n, g) in [(1, &EXAMPLE_1), (2, &EXAMPLE_2)] {
            let out = run(n, g).unwrap();
            assert!(out.mismatches.is_empty(), "{:?}", out.mismatches);
            assert!(out.report.ends_with("golden check: OK\n"));
        }
    }

    #[test]
    fn deviation_is_reported() {
        let g = Golden {
            x: &[9, 24, 26, 21],
            ..EXAMPLE_1
        };
        let out = run(1, &g).unwrap();
        assert_eq!(out.mismatches, vec!["recovered x".to_string()]);
    }
}
