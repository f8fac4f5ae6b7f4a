//! A freshness axiom and its swapping equation, in both directions.

use nel_kernel::corpus::lambda_theory;
use nel_kernel::kernel::build::{derive_eq_to_fresh, derive_fresh_to_eq};
use nel_kernel::kernel::{check_nel, Derivation, Rule};
use nel_kernel::syntax::{print_script, Script};

fn main() {
    let th = lambda_theory();
    let alpha = Derivation::infer(
        &th,
        Rule::Axiom {
            name: "alpha".into(),
        },
        vec![],
    )
    .unwrap();
    let j = alpha.conclusion().clone();
    println!("axiom:    {j}");

    let swap = derive_fresh_to_eq(&th, j.env(), j.fresh(), j.lhs(), j.sort(), &alpha).unwrap();
    check_nel(&th, &swap).unwrap();
    println!("swapping: {}", swap.conclusion());
    println!("{}", print_script(&Script::from_derivation(&swap)));

    let back = derive_eq_to_fresh(&th, j.env(), j.fresh(), j.lhs(), j.sort(), &swap).unwrap();
    check_nel(&th, &back).unwrap();
    assert_eq!(back.conclusion(), &j);
    println!(
        "and back: {} ({} rule applications)",
        back.conclusion(),
        back.size()
    );
}
