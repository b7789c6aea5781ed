//! Fixtures and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use rand::Rng;
use rpga::table::IrreversibleTruthTable;
use rpga::{Circuit, Word};

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub fn read_data(name: &str) -> String {
    std::fs::read_to_string(data(name)).unwrap()
}

/// A transcribed gate table: `(gate, inputs, outputs)` rows.
pub struct PrintedTable {
    pub label: &'static str,
    pub gate: &'static str,
    pub rows: &'static str,
}

/// Full gate tables, one row per line as `inputs outputs`.
pub const GATE_TABLES: &[PrintedTable] = &[
    PrintedTable { label: "2.1", gate: "feynman", rows: "00 00\n01 01\n10 11\n11 10" },
    PrintedTable {
        label: "2.2",
        gate: "toffoli",
        rows: "000 000\n001 001\n010 010\n011 011\n100 100\n101 101\n110 111\n111 110",
    },
    PrintedTable {
        label: "2.3",
        gate: "fredkin",
        rows: "000 000\n001 001\n010 010\n011 011\n100 100\n101 110\n110 101\n111 111",
    },
    PrintedTable {
        label: "2.4",
        gate: "peres",
        rows: "000 000\n001 001\n010 010\n011 011\n100 110\n101 111\n110 101\n111 100",
    },
    PrintedTable {
        label: "2.5",
        gate: "frg",
        rows: "000 000\n001 001\n010 010\n011 011\n100 100\n101 110\n110 101\n111 111",
    },
    PrintedTable {
        label: "2.6",
        gate: "f2g",
        rows: "000 000\n001 001\n010 010\n011 011\n100 111\n101 110\n110 101\n111 100",
    },
    PrintedTable {
        label: "2.7",
        gate: "nft",
        rows: "000 000\n001 010\n010 100\n011 101\n100 111\n101 110\n110 011\n111 001",
    },
    PrintedTable {
        label: "2.8",
        gate: "fredkin",
        rows: "000 000\n001 001\n010 010\n011 011\n100 100\n101 110\n110 101\n111 111",
    },
    PrintedTable {
        label: "2.9",
        gate: "picton",
        rows: "0000 0000\n0001 0010\n0010 0001\n0011 0011\n0100 0100\n0101 0101\n0110 0110\n0111 0111\n\
               1000 1000\n1001 1010\n1010 1001\n1011 1011\n1100 1100\n1101 1110\n1110 1101\n1111 1111",
    },
    PrintedTable {
        label: "2.11",
        gate: "kerntopf",
        rows: "000 111\n001 001\n010 000\n011 100\n100 010\n101 101\n110 011\n111 110",
    },
];

/// Picton as MAX/MIN: `A B -> C D` with C = max, D = min.
pub const PICTON_MAXMIN: &str = "00 00\n01 10\n10 10\n11 11";

/// Kerntopf with C tied to 1, including the duplicated rows as printed.
pub const KERNTOPF_MAXMIN: &str = "001 001\n001 001\n011 100\n011 100\n101 101\n101 101\n111 110\n111 110";

pub fn rows(text: &str) -> Vec<(Word, Word)> {
    text.lines()
        .map(|l| {
            let mut it = l.split_whitespace();
            (it.next().unwrap().parse().unwrap(), it.next().unwrap().parse().unwrap())
        })
        .collect()
}

/// Fig 4.9 (inputs a b c, outputs O1 O2).
pub const FIG_4_9: &str = "000 00\n001 10\n010 10\n011 01\n100 10\n101 01\n110 01\n111 11";

/// Kerntopf gate written out as its three XOR expressions.
pub fn kerntopf_formula(a: bool, b: bool, c: bool) -> [bool; 3] {
    [
        true ^ a ^ b ^ c ^ (a & b),
        true ^ (a & b) ^ b ^ c ^ (b & c),
        true ^ a ^ b ^ (a & c),
    ]
}

/// Weight-membership oracle: f(x) = [weight(x) in K].
pub fn weight_oracle(index_set: &BTreeSet<usize>, x: &Word) -> bool {
    index_set.contains(&x.weight())
}

/// Transposition oracle: output `j` is symmetric iff swapping any two inputs
/// leaves it unchanged on every row.
pub fn transposition_symmetric(t: &IrreversibleTruthTable, j: usize) -> bool {
    let n = t.num_inputs();
    let col = t.column(j);
    for p in 0..n {
        for q in p + 1..n {
            for x in 0..1usize << n {
                let (bp, bq) = ((x >> (n - 1 - p)) & 1, (x >> (n - 1 - q)) & 1);
                let mut y = x & !(1 << (n - 1 - p)) & !(1 << (n - 1 - q));
                y |= bq << (n - 1 - p);
                y |= bp << (n - 1 - q);
                if col[x] != col[y] {
                    return false;
                }
            }
        }
    }
    true
}

pub fn random_table(rng: &mut impl Rng, n: usize, m: usize, bias_symmetric: bool) -> IrreversibleTruthTable {
    // half the columns are drawn per weight so symmetric outputs are common
    let columns: Vec<Vec<bool>> = (0..m)
        .map(|_| {
            if bias_symmetric && rng.gen_bool(0.5) {
                let per_weight: Vec<bool> = (0..=n).map(|_| rng.gen()).collect();
                (0..1u64 << n).map(|x| per_weight[x.count_ones() as usize]).collect()
            } else {
                (0..1u64 << n).map(|_| rng.gen()).collect()
            }
        })
        .collect();
    let outputs: Vec<Word> = (0..1usize << n).map(|x| Word::from_bits(columns.iter().map(|c| c[x]))).collect();
    IrreversibleTruthTable::from_rows(
        rpga::table::default_input_names(n),
        rpga::table::default_output_names(m),
        (0..1u64 << n).map(|x| Word::from_index(x, n)).zip(outputs).collect::<Vec<(Word, Word)>>(),
    )
    .unwrap()
}

pub const RANDOM_GATES: &[&str] = &["not", "feynman", "toffoli", "fredkin", "swap", "peres", "f2g", "nft", "kerntopf", "picton", "frg"];

/// A random circuit with random roles and names.
pub fn random_circuit(rng: &mut impl Rng, max_lines: usize, max_gates: usize) -> Circuit {
    let width = rng.gen_range(1..=max_lines);
    let mut c = Circuit::new(width).unwrap();
    c.set_name(format!("r{}", rng.gen_range(0..1000)));
    let gates = rng.gen_range(0..=max_gates);
    for _ in 0..gates {
        let name = RANDOM_GATES[rng.gen_range(0..RANDOM_GATES.len())];
        let g = rpga::gate::builtin(name).unwrap();
        if g.arity() > width {
            continue;
        }
        let mut pins: Vec<usize> = (0..width).collect();
        for i in 0..g.arity() {
            let j = rng.gen_range(i..width);
            pins.swap(i, j);
        }
        pins.truncate(g.arity());
        let slot = rng.gen_range(0..=c.next_slot());
        let _ = c.place_gate(slot, g, &pins);
    }
    for line in 0..width {
        if rng.gen_bool(0.2) {
            c.set_line_name(line, format!("w{line}")).unwrap();
        }
        if rng.gen_bool(0.2) {
            c.set_constant(line, rng.gen()).unwrap();
        }
        if rng.gen_bool(0.2) {
            c.set_garbage(line).unwrap();
        } else if rng.gen_bool(0.2) {
            c.set_output_name(line, format!("y{line}")).unwrap();
        }
    }
    c
}
