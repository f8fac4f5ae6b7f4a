//! Finite permutations of atoms: composition, inverses, supports and
//! generalised transpositions.

use nel_kernel::perm::{fresh_tuple, gen_transposition, Atom, AtomSet, AtomTuple, Perm};

fn main() {
    let atom = |s: &str| Atom::parse(s).unwrap();
    let (a, b, c) = (atom("a"), atom("b"), atom("c"));

    let ab = Perm::swap(a, b);
    let bc = Perm::swap(b, c);
    // compose(p2, p1) applies p1 first.
    let p = bc.compose(&ab);
    println!("(b c) after (a b) = {p}, support {:?}", p.support());
    println!("inverse: {}", p.invert());
    println!("a goes to {}", p.apply(a));

    let q = Perm::cycle(&[a, b, c]).unwrap();
    println!(
        "disagreement set of {p} and {q}: {:?}",
        p.disagreement_set(&q)
    );

    let used: AtomSet = [a, b].into();
    let fresh = fresh_tuple(2, &used);
    let src = AtomTuple::new(vec![a, b]).unwrap();
    let g = gen_transposition(&src, &fresh).unwrap();
    println!("swapping {src} with fresh {fresh}: {g}");
    println!("acting on {{a, c}}: {:?}", g.act_set(&[a, c].into()));
}
