mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rpga::fabric::{build, configure, Configuration, Realization};
use rpga::io::{parse_rcir, parse_rtab};
use rpga::session::{LineState, Mode, Session};
use rpga::sim::{check_bijective_with_cap, projected_table};
use rpga::symmetry::analyze;
use rpga::{Error, Word};

const BOTH: [Realization; 2] = [Realization::Kerntopf, Realization::Picton];

fn rd32_config(r: Realization) -> Configuration {
    let report = analyze(&projected_table(&parse_rcir(&read_data("rd32.rcir")).unwrap()).unwrap());
    configure(&Arc::new(build(3, r).unwrap()), &report).unwrap()
}

fn subsets(n: usize) -> impl Iterator<Item = BTreeSet<usize>> {
    (0..1u32 << (n + 1)).map(move |mask| (0..=n).filter(|&w| mask >> w & 1 == 1).collect())
}

#[test]
fn node_counts_follow_the_triangle() {
    for r in BOTH {
        for n in 1..=7 {
            assert_eq!(build(n, r).unwrap().nodes().len(), n * (n - 1) / 2);
        }
    }
    assert!(matches!(build(0, Realization::Kerntopf), Err(Error::BadWidth { .. })));
}

#[test]
fn thresholds_sorted_and_single_index_one_hot() {
    for r in BOTH {
        for n in 1..=6 {
            let f = build(n, r).unwrap();
            for x in 0..1u64 << n {
                let input = Word::from_index(x, n);
                let (t, s) = f.eval_taps(&input).unwrap();
                let w = input.weight();
                for k in 1..=n {
                    assert_eq!(t.bit(k - 1), w >= k);
                    if k > 1 {
                        assert!(t.bit(k - 1) <= t.bit(k - 2), "T not sorted");
                    }
                }
                // S_0 is the complement of T_1
                let s0 = !t.bit(0);
                assert_eq!(s0 as usize + s.weight(), 1, "n={n} x={input}");
            }
        }
    }
}

#[test]
fn every_index_set_matches_weight_oracle() {
    for r in BOTH {
        let mut checked = 0;
        for n in 1..=5 {
            let f = Arc::new(build(n, r).unwrap());
            for k in subsets(n) {
                let cfg = Configuration::new(f.clone(), vec![("f".into(), k.clone())]).unwrap();
                for x in 0..1u64 << n {
                    let input = Word::from_index(x, n);
                    assert_eq!(cfg.eval(&input).unwrap().outputs[0].value, weight_oracle(&k, &input));
                    checked += 1;
                }
            }
        }
        assert_eq!(checked, (1..=5).map(|n| (1 << (n + 1)) * (1 << n)).sum::<usize>());
    }
}

#[test]
fn resource_counts() {
    for n in 2..=6 {
        let k = Arc::new(build(n, Realization::Kerntopf).unwrap()).unconfigured().resource_report();
        let p = Arc::new(build(n, Realization::Picton).unwrap()).unconfigured().resource_report();
        assert_eq!((k.node_constants, k.node_garbage), (n * (n - 1) / 2, n * (n - 1) / 2));
        assert_eq!((p.node_constants, p.node_garbage), (2 * k.node_constants, 2 * k.node_garbage));
    }
    let k3 = rd32_config(Realization::Kerntopf).resource_report();
    assert_eq!((k3.node_constants, k3.node_garbage), (3, 3));
    let p3 = rd32_config(Realization::Picton).resource_report();
    assert_eq!((p3.node_constants, p3.node_garbage), (6, 6));
}

#[test]
fn rd32_session_end_to_end() {
    for r in BOTH {
        let cfg = rd32_config(r);
        assert_eq!(cfg.bindings().len(), 2);
        let e = cfg.eval(&"100".parse().unwrap()).unwrap();
        assert_eq!((e.output("O1"), e.output("O2")), (Some(true), Some(false)));
        for (input, expected) in rows(FIG_4_9) {
            let e = cfg.eval(&input).unwrap();
            assert_eq!(Word::from_bits(e.outputs.iter().map(|o| o.value)), expected, "{input}");
        }
    }
}

#[test]
fn asymmetric_table_is_rejected() {
    let report = analyze(&parse_rtab(&read_data("table1_2b.rtab")).unwrap());
    let f = Arc::new(build(3, Realization::Kerntopf).unwrap());
    assert!(matches!(configure(&f, &report), Err(Error::NotSymmetric(name)) if name == "out1"));
    let f4 = Arc::new(build(4, Realization::Kerntopf).unwrap());
    let fig = analyze(&parse_rtab(&read_data("fig4_9.rtab")).unwrap());
    assert!(matches!(configure(&f4, &fig), Err(Error::ConfigMismatch(_))));
}

#[test]
fn netlists_are_bijective_circuits() {
    for r in BOTH {
        for n in 1..=3 {
            let cfg = one_hot_config(n, r);
            let v = check_bijective_with_cap(cfg.netlist(), 20).unwrap();
            assert!(v.is_bijective(), "{r} n={n}");
            assert!(cfg.netlist().validate().is_ok());
        }
    }
}

fn one_hot_config(n: usize, r: Realization) -> Configuration {
    let f = Arc::new(build(n, r).unwrap());
    let bindings = (0..=n).map(|k| (format!("S{k}"), BTreeSet::from([k]))).collect();
    Configuration::new(f, bindings).unwrap()
}

#[test]
fn symmetric_circuits_reproduce_their_tables() {
    let mut rng = StdRng::seed_from_u64(3);
    let mut found = 0;
    for _ in 0..400 {
        let c = random_circuit(&mut rng, 5, 8);
        let Ok(t) = projected_table(&c) else { continue };
        if t.num_inputs() == 0 {
            continue;
        }
        let report = analyze(&t);
        if !report.is_fully_symmetric() {
            continue;
        }
        found += 1;
        let cfg = configure(&Arc::new(build(t.num_inputs(), Realization::Kerntopf).unwrap()), &report).unwrap();
        for (x, out) in t.rows() {
            let e = cfg.eval(&x).unwrap();
            assert_eq!(&Word::from_bits(e.outputs.iter().map(|o| o.value)), out);
        }
    }
    assert!(found > 10, "only {found} symmetric circuits sampled");
}

#[test]
fn session_walkthrough() {
    let cfg = Arc::new(rd32_config(Realization::Kerntopf));
    let mut s = Session::start(cfg.fabric().clone());
    let r = s.snapshot();
    assert_eq!(r.mode, Mode::Initial);
    assert!(r.outputs.is_empty() && r.active_nodes() == 0);
    let r = s.load_config(cfg.clone()).unwrap();
    assert_eq!(r.outputs.len(), 2);
    assert!(r.outputs.iter().all(|o| o.state == LineState::Undriven));
    let r = s.apply_input(&"100".parse().unwrap()).unwrap();
    assert_eq!((r.output("O1"), r.output("O2")), (Some(LineState::On), Some(LineState::Off)));
    let mut shown = Vec::new();
    s.apply_input(&"000".parse().unwrap()).unwrap();
    for _ in 0..8 {
        let r = s.snapshot();
        shown.push((r.input.clone().unwrap(), r.outputs_line()));
        s.next().unwrap();
    }
    let expected: Vec<(Word, String)> = rows(FIG_4_9)
        .into_iter()
        .map(|(i, o)| (i, format!("O1={} O2={}", o.bit(0) as u8, o.bit(1) as u8)))
        .collect();
    assert_eq!(shown, expected);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn next_prev_are_inverse(n in 1usize..=6, start in any::<u64>(), kerntopf in any::<bool>()) {
        let r = if kerntopf { Realization::Kerntopf } else { Realization::Picton };
        let cfg = Arc::new(one_hot_config(n, r));
        let mut s = Session::with_config(cfg.clone());
        let start = start % (1 << n);
        s.apply_input(&Word::from_index(start, n)).unwrap();
        s.next().unwrap();
        s.prev().unwrap();
        prop_assert_eq!(s.cursor(), Some(start));
        s.prev().unwrap();
        s.next().unwrap();
        prop_assert_eq!(s.cursor(), Some(start));

        let mut seen = BTreeSet::new();
        for _ in 0..1u64 << n {
            let snap = s.snapshot();
            let x = snap.input.clone().unwrap();
            prop_assert!(seen.insert(x.index()));
            let e = cfg.eval(&x).unwrap();
            for (o, v) in snap.outputs.iter().zip(&e.outputs) {
                prop_assert_eq!(o.state == LineState::On, v.value);
                prop_assert_eq!(&o.name, &v.name);
            }
            s.next().unwrap();
        }
        prop_assert_eq!(seen.len(), 1usize << n);
        prop_assert_eq!(s.cursor(), Some(start));
    }

    #[test]
    fn sessions_are_independent(steps in prop::collection::vec(0u8..3, 1..20)) {
        let cfg = Arc::new(rd32_config(Realization::Kerntopf));
        let mut a = Session::with_config(cfg.clone());
        let mut b = Session::with_config(cfg.clone());
        b.apply_input(&"101".parse().unwrap()).unwrap();
        for step in steps {
            match step {
                0 => { a.next().unwrap(); }
                1 => { a.prev().unwrap(); }
                _ => {
                    a.reset();
                    a.load_config(cfg.clone()).unwrap();
                }
            }
            prop_assert_eq!(b.cursor(), Some(5));
        }
    }
}

#[test]
fn random_configurations_round_trip_through_eval() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..50 {
        let n = rng.gen_range(1..=6);
        let f = Arc::new(build(n, Realization::Picton).unwrap());
        let k: BTreeSet<usize> = (0..=n).filter(|_| rng.gen_bool(0.5)).collect();
        let cfg = Configuration::new(f, vec![("g".into(), k.clone())]).unwrap();
        let x = Word::from_index(rng.gen_range(0..1u64 << n), n);
        let e = cfg.eval(&x).unwrap();
        assert_eq!(e.outputs[0].value, weight_oracle(&k, &x));
        assert_eq!(e.stages.first().unwrap().label, "inputs");
        assert_eq!(e.stages.last().unwrap().label, "outputs");
    }
}
