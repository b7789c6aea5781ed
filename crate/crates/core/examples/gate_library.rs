//! Prints every builtin gate's truth table and classification, plus a few parametric gates.

use rpga::gate::{builtin, mcf, mct, Polarity, BUILTIN_NAMES};
use rpga::Word;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in BUILTIN_NAMES {
        let g = builtin(name)?;
        let class = g.classify();
        println!(
            "{name} ({} lines) conservative={} parity_preserving={}",
            g.arity(),
            class.conservative,
            class.parity_preserving
        );
        for x in 0..1u64 << g.arity() {
            let w = Word::from_index(x, g.arity());
            println!("  {w} -> {}", g.apply(&w)?);
        }
    }

    let negated = mct(&[Polarity::Positive, Polarity::Negative])?;
    println!("{}: 100 -> {}", negated.name(), negated.apply(&"100".parse()?)?);
    let f3 = mcf(3)?;
    println!("{}: 111 10 -> {}", f3.name(), f3.apply(&"11110".parse()?)?);
    Ok(())
}
