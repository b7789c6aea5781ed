mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rpga::io::parse_rtab;
use rpga::symmetry::{analyze, brute_force_symmetric, indices_to_function};
use rpga::table::IrreversibleTruthTable;
use rpga::Word;

#[test]
fn fig_4_9_is_s13_and_s23() {
    let r = analyze(&parse_rtab(&read_data("fig4_9.rtab")).unwrap());
    assert!(r.is_fully_symmetric());
    assert_eq!(r.outputs[0].index_set, Some(BTreeSet::from([1, 3])));
    assert_eq!(r.outputs[1].index_set, Some(BTreeSet::from([2, 3])));
    assert_eq!(r.render_text(), "O1: symmetric S{1,3} A=0101\nO2: symmetric S{2,3} A=0011\n");
}

#[test]
fn table_1_2b_has_weight_one_witness() {
    let t = parse_rtab(&read_data("table1_2b.rtab")).unwrap();
    let r = analyze(&t);
    let out1 = &r.outputs[0];
    assert!(!out1.symmetric);
    let w = out1.witness.as_ref().unwrap();
    assert_eq!((w.first.input.to_string(), w.first.value), ("001".to_string(), true));
    assert_eq!((w.second.input.to_string(), w.second.value), ("100".to_string(), false));
    assert_eq!(w.first.input.weight(), 1);
    assert!(!r.outputs[1].symmetric);
    assert!(!brute_force_symmetric(&t, 0));
}

#[test]
fn majority_is_symmetric() {
    let n = 3;
    let t = IrreversibleTruthTable::from_columns(
        rpga::table::default_input_names(n),
        vec!["maj".into()],
        &[(0..8u64).map(|x| x.count_ones() >= 2).collect()],
    )
    .unwrap();
    assert!(brute_force_symmetric(&t, 0));
    assert!(transposition_symmetric(&t, 0));
    assert_eq!(analyze(&t).outputs[0].index_set, Some(BTreeSet::from([2, 3])));
}

#[test]
fn agrees_with_transposition_oracle_on_500_tables() {
    let mut rng = StdRng::seed_from_u64(42);
    let (mut sym, mut asym) = (0, 0);
    for _ in 0..500 {
        let n = rng.gen_range(1..=6);
        let m = rng.gen_range(1..=3);
        let t = random_table(&mut rng, n, m, true);
        let r = analyze(&t);
        for j in 0..m {
            let expected = transposition_symmetric(&t, j);
            assert_eq!(r.outputs[j].symmetric, expected);
            assert_eq!(brute_force_symmetric(&t, j), expected);
            if expected {
                sym += 1;
                let k = r.outputs[j].index_set.as_ref().unwrap();
                for (x, out) in t.rows() {
                    assert_eq!(out.bit(j), weight_oracle(k, &x));
                }
            } else {
                asym += 1;
                let w = r.outputs[j].witness.as_ref().unwrap();
                assert_eq!(w.first.input.weight(), w.second.input.weight());
                assert_ne!(w.first.value, w.second.value);
                assert_eq!(t.output(w.first.input.index() as usize).bit(j), w.first.value);
                assert_eq!(t.output(w.second.input.index() as usize).bit(j), w.second.value);
            }
        }
    }
    assert!(sym > 100 && asym > 100, "{sym} symmetric, {asym} asymmetric");
}

#[test]
fn index_sets_round_trip_exhaustively() {
    for n in 0..=6usize {
        for mask in 0..1u32 << (n + 1) {
            let k: BTreeSet<usize> = (0..=n).filter(|&w| mask >> w & 1 == 1).collect();
            let t = indices_to_function(n, &k).unwrap();
            let r = analyze(&t);
            assert_eq!(r.outputs[0].index_set.as_ref(), Some(&k), "n={n}");
        }
    }
    assert!(indices_to_function(3, &BTreeSet::from([4])).is_err());
}

proptest! {
    #[test]
    fn analysis_ignores_row_order(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let n = rng.gen_range(1..=5);
        let t = random_table(&mut rng, n, 2, true);
        let mut rows: Vec<(Word, Word)> = t.rows().map(|(i, o)| (i, o.clone())).collect();
        rows.shuffle(&mut rng);
        let shuffled = IrreversibleTruthTable::from_rows(
            t.input_names().to_vec(),
            t.output_names().to_vec(),
            rows,
        )
        .unwrap();
        let (a, b) = (analyze(&t), analyze(&shuffled));
        for (x, y) in a.outputs.iter().zip(&b.outputs) {
            prop_assert_eq!(x.symmetric, y.symmetric);
            prop_assert_eq!(&x.index_set, &y.index_set);
        }
    }
}
