//! Compiling the αβη theory into an equation-only theory.

use nel_kernel::compile::compile_theory;
use nel_kernel::corpus::lambda_theory;
use nel_kernel::syntax::print_theory;

fn main() {
    let th = lambda_theory();
    print!("{}", print_theory(&th));
    println!();
    let compiled = compile_theory(&th);
    print!("{}", print_theory(&compiled));
    assert_eq!(compile_theory(&compiled), compiled);
}
