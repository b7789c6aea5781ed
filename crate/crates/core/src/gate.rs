//! Reversible gates as explicit bijections on k-bit words.
//!
//! A gate word puts pin 0 in the most significant bit, so entry `i` of a
//! mapping is the output word for the input whose binary reading is `i`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::Word;

/// Default upper bound on the number of controls of parametric gates.
pub const DEFAULT_ARITY_CAP: usize = 12;

/// Every builtin gate name, in the order they are listed by the CLI.
pub const BUILTIN_NAMES: [&str; 11] = [
    "not", "feynman", "toffoli", "fredkin", "peres", "frg", "f2g", "nft", "picton", "kerntopf",
    "swap",
];

#[derive(Clone, PartialEq, Eq)]
pub struct GateDef {
    name: String,
    arity: usize,
    mapping: Vec<u32>,
    input_pins: Vec<String>,
    output_pins: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GateClass {
    pub bijective: bool,
    /// Hamming weight preserving.
    pub conservative: bool,
    pub parity_preserving: bool,
    pub self_inverse: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    Positive,
    Negative,
}

impl GateDef {
    /// Builds a gate from an explicit mapping, rejecting anything that is not a
    /// permutation of `0..2^arity`.
    pub fn new(name: impl Into<String>, mapping: Vec<u32>) -> Result<Self> {
        let name = name.into();
        let len = mapping.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::WidthError { expected: len.next_power_of_two().max(2), actual: len });
        }
        let arity = len.trailing_zeros() as usize;
        let mut seen: Vec<Option<u32>> = vec![None; len];
        for (input, &out) in mapping.iter().enumerate() {
            let slot = seen.get_mut(out as usize).ok_or(Error::WidthError {
                expected: arity,
                actual: 32 - out.leading_zeros() as usize,
            })?;
            if let Some(first) = *slot {
                return Err(Error::NotBijective { name, first, second: input as u32 });
            }
            *slot = Some(input as u32);
        }
        let (input_pins, output_pins) = pin_names(arity);
        Ok(GateDef { name, arity, mapping, input_pins, output_pins })
    }

    fn from_fn(name: &str, arity: usize, f: impl Fn(&[bool]) -> Vec<bool>) -> Self {
        let mapping = (0..1u64 << arity)
            .map(|i| {
                let input = Word::from_index(i, arity);
                Word::from(f(input.bits())).index() as u32
            })
            .collect();
        GateDef::new(name, mapping).expect("generated gate mapping must be a permutation")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn mapping(&self) -> &[u32] {
        &self.mapping
    }

    pub fn input_pins(&self) -> &[String] {
        &self.input_pins
    }

    pub fn output_pins(&self) -> &[String] {
        &self.output_pins
    }

    /// Same mapping under a different name.
    pub fn renamed(&self, name: impl Into<String>) -> Self {
        GateDef { name: name.into(), ..self.clone() }
    }

    pub fn apply_index(&self, input: u32) -> u32 {
        self.mapping[input as usize]
    }

    pub fn apply(&self, word: &Word) -> Result<Word> {
        self.check_width(word)?;
        Ok(Word::from_index(self.apply_index(word.index() as u32) as u64, self.arity))
    }

    /// Runs the mapping backwards.
    pub fn unapply(&self, word: &Word) -> Result<Word> {
        self.check_width(word)?;
        let target = word.index() as u32;
        let input = self.mapping.iter().position(|&o| o == target).expect("bijective mapping");
        Ok(Word::from_index(input as u64, self.arity))
    }

    pub fn inverse(&self) -> GateDef {
        let mut inv = vec![0u32; self.mapping.len()];
        for (i, &o) in self.mapping.iter().enumerate() {
            inv[o as usize] = i as u32;
        }
        GateDef { name: format!("{}_inv", self.name), mapping: inv, ..self.clone() }
    }

    fn check_width(&self, word: &Word) -> Result<()> {
        if word.width() != self.arity {
            return Err(Error::WidthError { expected: self.arity, actual: word.width() });
        }
        Ok(())
    }

    /// Classification flags computed by an exhaustive scan of the mapping.
    pub fn classify(&self) -> GateClass {
        let mut seen = vec![false; self.mapping.len()];
        let mut class = GateClass {
            bijective: true,
            conservative: true,
            parity_preserving: true,
            self_inverse: true,
        };
        for (i, &o) in self.mapping.iter().enumerate() {
            let (wi, wo) = ((i as u32).count_ones(), o.count_ones());
            class.conservative &= wi == wo;
            class.parity_preserving &= wi % 2 == wo % 2;
            class.self_inverse &= self.mapping[o as usize] == i as u32;
            if std::mem::replace(&mut seen[o as usize], true) {
                class.bijective = false;
            }
        }
        class
    }
}

impl fmt::Debug for GateDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GateDef")
            .field("name", &self.name)
            .field("arity", &self.arity)
            .finish_non_exhaustive()
    }
}

fn pin_names(arity: usize) -> (Vec<String>, Vec<String>) {
    if arity <= 10 {
        let ins = (0..arity).map(|i| ((b'A' + i as u8) as char).to_string()).collect();
        let outs = (0..arity).map(|i| ((b'P' + i as u8) as char).to_string()).collect();
        (ins, outs)
    } else {
        ((1..=arity).map(|i| format!("I{i}")).collect(), (1..=arity).map(|i| format!("O{i}")).collect())
    }
}

/// Looks up one of the eleven library gates.
pub fn builtin(name: &str) -> Result<GateDef> {
    let gate = match name {
        "not" => GateDef::from_fn("not", 1, |x| vec![!x[0]]),
        "feynman" => GateDef::from_fn("feynman", 2, |x| vec![x[0], x[0] ^ x[1]]),
        "toffoli" => GateDef::from_fn("toffoli", 3, |x| vec![x[0], x[1], x[2] ^ (x[0] & x[1])]),
        "fredkin" | "frg" => GateDef::from_fn(name, 3, |x| {
            if x[0] {
                vec![x[0], x[2], x[1]]
            } else {
                x.to_vec()
            }
        }),
        "peres" => {
            GateDef::from_fn("peres", 3, |x| vec![x[0], x[0] ^ x[1], (x[0] & x[1]) ^ x[2]])
        }
        "f2g" => GateDef::from_fn("f2g", 3, |x| vec![x[0], x[0] ^ x[1], x[0] ^ x[2]]),
        "nft" => GateDef::from_fn("nft", 3, |x| {
            let (a, b, c) = (x[0], x[1], x[2]);
            vec![a ^ b, (!b & c) ^ (a & !c), (b & c) ^ (a & !c)]
        }),
        // Swap the data pair unless A < B.
        "picton" => GateDef::from_fn("picton", 4, |x| {
            if !x[0] && x[1] {
                x.to_vec()
            } else {
                vec![x[0], x[1], x[3], x[2]]
            }
        }),
        "kerntopf" => GateDef::from_fn("kerntopf", 3, |x| {
            let (a, b, c) = (x[0], x[1], x[2]);
            vec![!(a ^ b ^ c ^ (a & b)), !((a & b) ^ b ^ c ^ (b & c)), !(a ^ b ^ (a & c))]
        }),
        "swap" => GateDef::from_fn("swap", 2, |x| vec![x[1], x[0]]),
        _ => return Err(Error::UnknownGate(name.to_string())),
    };
    Ok(gate)
}

/// Multiple-control Toffoli with `polarity.len()` controls; the target is the
/// last pin.
pub fn mct(polarity: &[Polarity]) -> Result<GateDef> {
    mct_with_cap(polarity, DEFAULT_ARITY_CAP)
}

pub fn mct_positive(num_controls: usize) -> Result<GateDef> {
    mct(&vec![Polarity::Positive; num_controls])
}

pub fn mct_with_cap(polarity: &[Polarity], cap: usize) -> Result<GateDef> {
    let m = polarity.len();
    if m > cap {
        return Err(Error::GateTooWide { requested: m, cap });
    }
    let all_positive = polarity.iter().all(|&p| p == Polarity::Positive);
    if all_positive && m <= 2 {
        return builtin(["not", "feynman", "toffoli"][m]);
    }
    let name = if all_positive {
        format!("mct{m}")
    } else {
        let pol: String =
            polarity.iter().map(|p| if *p == Polarity::Positive { 'p' } else { 'n' }).collect();
        format!("mct{m}:{pol}")
    };
    Ok(GateDef::from_fn(&name, m + 1, |x| {
        let fire = polarity.iter().zip(x).all(|(p, &b)| b == (*p == Polarity::Positive));
        let mut out = x.to_vec();
        out[m] ^= fire;
        out
    }))
}

/// Multiple-control Fredkin: swaps the last two pins when every control is 1.
pub fn mcf(num_controls: usize) -> Result<GateDef> {
    mcf_with_cap(num_controls, DEFAULT_ARITY_CAP)
}

pub fn mcf_with_cap(num_controls: usize, cap: usize) -> Result<GateDef> {
    let m = num_controls;
    if m + 2 > cap {
        return Err(Error::GateTooWide { requested: m, cap: cap.saturating_sub(2) });
    }
    if m <= 1 {
        return builtin(["swap", "fredkin"][m]);
    }
    Ok(GateDef::from_fn(&format!("mcf{m}"), m + 2, |x| {
        let mut out = x.to_vec();
        if x[..m].iter().all(|&b| b) {
            out.swap(m, m + 1);
        }
        out
    }))
}

/// Resolves any gate name accepted by the circuit formats: builtins plus the
/// parametric `mct<m>`, `mct<m>:<p|n...>` and `mcf<m>` families.
pub fn lookup(name: &str) -> Result<GateDef> {
    if let Ok(g) = builtin(name) {
        return Ok(g);
    }
    let unknown = || Error::UnknownGate(name.to_string());
    if let Some(rest) = name.strip_prefix("mct") {
        let (count, pol) = match rest.split_once(':') {
            Some((c, p)) => (c, Some(p)),
            None => (rest, None),
        };
        let m: usize = count.parse().map_err(|_| unknown())?;
        let polarity = match pol {
            None => vec![Polarity::Positive; m],
            Some(p) => p
                .chars()
                .map(|c| match c {
                    'p' => Ok(Polarity::Positive),
                    'n' => Ok(Polarity::Negative),
                    _ => Err(unknown()),
                })
                .collect::<Result<Vec<_>>>()?,
        };
        if polarity.len() != m {
            return Err(unknown());
        }
        let gate = mct(&polarity)?;
        // only canonical spellings are accepted, so names round-trip
        return if gate.name() == name { Ok(gate) } else { Err(unknown()) };
    }
    if let Some(rest) = name.strip_prefix("mcf") {
        let m: usize = rest.parse().map_err(|_| unknown())?;
        let gate = mcf(m)?;
        return if gate.name() == name { Ok(gate) } else { Err(unknown()) };
    }
    Err(unknown())
}
