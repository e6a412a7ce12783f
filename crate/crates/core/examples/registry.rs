//! Reading identity records, builtin and from text.

use fibcat::seriesdsl::{builtin_registry, parse_registry_named, serialize_record, Kind};

const EXTRA: &str = r#"
[identity]
id = "demo.halves"
kind = "series"
paper = "demo"
index = "n"  start = 0
term = "1/2^(n + s)"
tail = "geometric ratio=1/2 from=0"
rhs = "2^(1 - s)"
params = "s=0..3"

[identity]
id = "demo.broken"
kind = "series"
paper = "demo"
index = "n"  start = 0
term = "1/(2^n"
"#;

fn main() {
    let all = builtin_registry();
    for kind in Kind::ALL {
        println!("{kind:10} {}", all.iter().filter(|r| r.kind == kind).count());
    }
    println!("as printed {}", all.iter().filter(|r| r.as_printed).count());

    let parsed = parse_registry_named(EXTRA, "demo.reg");
    for r in &parsed.records {
        print!("{}", serialize_record(r));
        println!("bindings: {}", r.bindings().len());
    }
    for d in &parsed.diagnostics {
        println!("diagnostic: {d}");
    }
}
