//! Reading a source file, checking its derivations and printing it back.

use nel_kernel::corpus::lambda_corpus;
use nel_kernel::syntax::{parse_file, print_file};

fn main() {
    let text = print_file(&lambda_corpus());
    let file = parse_file(&text).unwrap();
    for item in &file.derivations {
        match file.check_item(item) {
            Ok(d) => println!(
                "{:<16} ok, {} nodes: {}",
                item.name,
                d.size(),
                d.conclusion()
            ),
            Err(e) => println!("{:<16} FAILED: {e}", item.name),
        }
    }
    assert_eq!(print_file(&file), text);

    match parse_file("sort tm;\nop lam[1] : (tm) -> tm;\ntheory t nel {\n  axiom bad : (x : tm) |- lam[a] y : tm;\n}\n") {
        Ok(_) => unreachable!(),
        Err(e) => println!("error at {e}"),
    }
}
