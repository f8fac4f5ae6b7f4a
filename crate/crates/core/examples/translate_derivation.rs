//! Translating a freshness-aware derivation into a pair of equation-only
//! derivations over the compiled theory.

use nel_kernel::compile::compile_theory;
use nel_kernel::corpus::{lambda_derivations, lambda_theory};
use nel_kernel::kernel::check_neol;
use nel_kernel::kernel::translate::translate_derivation;

fn main() {
    let th = lambda_theory();
    let compiled = compile_theory(&th);
    for (name, d) in lambda_derivations(&th).unwrap() {
        let (eq, swap) = translate_derivation(&th, &compiled, &d).unwrap();
        check_neol(&compiled, &eq).unwrap();
        check_neol(&compiled, &swap).unwrap();
        println!("{name}: {}", d.conclusion());
        println!("  equation  ({:>3} nodes) {}", eq.size(), eq.conclusion());
        println!(
            "  swapping  ({:>3} nodes) {}",
            swap.size(),
            swap.conclusion()
        );
    }
}
