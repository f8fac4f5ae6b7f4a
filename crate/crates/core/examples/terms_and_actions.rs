//! Terms over the λ-calculus signature and the two permutation actions.

use std::collections::BTreeMap;

use nel_kernel::perm::{Atom, Perm};
use nel_kernel::signature::Signature;
use nel_kernel::syntax::parse_term;
use nel_kernel::term::Term;

fn main() {
    let sig = Signature::lambda();
    let t = parse_term(&sig, "lam[a] app((a c) x, var[b])").unwrap();
    let p = Perm::swap(Atom::parse("a").unwrap(), Atom::parse("b").unwrap());

    println!("t                = {t}");
    println!("support          = {:?}", t.support());
    // The object-level action renames parameters and composes into
    // suspensions; the meta-level one conjugates suspensions instead.
    println!("object (a b) * t = {}", t.object_act(&p));
    println!("meta   (a b) . t = {}", t.meta_act(&p));

    let sigma = BTreeMap::from([("x".into(), parse_term(&sig, "app(y, var[c])").unwrap())]);
    let s: Term = t.substitute(&sigma).unwrap();
    println!("t{{x := app(y, var[c])}} = {s}");
}
