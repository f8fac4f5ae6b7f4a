//! Bounded backward proof search, in the αβη theory and without axioms.

use std::sync::Arc;

use nel_kernel::corpus::lambda_theory;
use nel_kernel::empty::empty_theory;
use nel_kernel::env::Flavour;
use nel_kernel::search::{bounded_search, SearchBudget};
use nel_kernel::syntax::{parse_judgement, print_script, Script};

fn main() {
    let th = lambda_theory();
    let empty = empty_theory(
        Arc::new(nel_kernel::signature::Signature::lambda()),
        Flavour::Neol,
    );
    let goals = [
        (&th, "({a} # x : tm) |- x ~ lam[a] app(x, var[a]) : tm"),
        (&th, "(y : tm) |- y ~ app(lam[a] var[a], y) : tm"),
        (
            &empty,
            "({a b} # x : tm, y : tm) |- app((a b) x, y) ~ app(x, y) : tm",
        ),
        (&empty, "(x : tm) |- (a b) x ~ x : tm"),
    ];
    for (theory, src) in goals {
        let goal = parse_judgement(&theory.sig, src).unwrap();
        let budget = SearchBudget::for_goal(theory, &goal, 4, 0, 1);
        println!("{} theory, {src}", theory.name);
        match bounded_search(theory, &goal, &budget) {
            Some(d) => println!("{}\n", print_script(&Script::from_derivation(&d))),
            None => println!("not found\n"),
        }
    }
}
