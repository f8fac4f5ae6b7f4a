//! Deciding equality and freshness without axioms, with certificates.

use std::sync::Arc;

use nel_kernel::empty::{certify_eq, decide_eq, decide_fresh, empty_theory};
use nel_kernel::env::Flavour;
use nel_kernel::kernel::check_neol;
use nel_kernel::signature::Signature;
use nel_kernel::syntax::{parse_judgement, print_script, Script};

fn main() {
    let sig = Arc::new(Signature::lambda());
    for src in [
        "({a b} # x : tm) |- (a b) x ~ x : tm",
        "(x : tm) |- x ~ x : tm",
        "(x : tm) |- (a b) x ~ x : tm",
        "({a b} # x : tm, y : tm) |- app(lam[a] (a c) x, y) ~ app(lam[a] (a b c) x, y) : tm",
    ] {
        let j = parse_judgement(&sig, src).unwrap();
        let verdict = decide_eq(&sig, j.env(), j.lhs(), j.rhs(), j.sort()).unwrap();
        println!("{src}\n  => {verdict}");
    }

    for src in [
        "({a} # x : tm) |- {a} # lam[b] x : tm",
        "(x : tm) |- {a} # lam[a] x : tm",
    ] {
        let j = parse_judgement(&sig, src).unwrap();
        let verdict = decide_fresh(&sig, j.env(), j.fresh(), j.lhs(), j.sort()).unwrap();
        println!("{src}\n  => {verdict}");
    }

    let th = empty_theory(sig.clone(), Flavour::Neol);
    let j = parse_judgement(
        &sig,
        "({a b} # x : tm) |- app((a b) x, var[c]) ~ app(x, var[c]) : tm",
    )
    .unwrap();
    let d = certify_eq(&th, j.env(), j.lhs(), j.rhs(), j.sort()).unwrap();
    check_neol(&th, &d).unwrap();
    println!(
        "certificate for {j}:\n{}",
        print_script(&Script::from_derivation(&d))
    );
}
