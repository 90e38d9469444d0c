//! JSON input documents and the command functions behind the binary.

use toric_lagrangian::cli::*;
use toric_lagrangian::sampler::Tolerances;

fn main() {
    let doc = example_document(ExampleName::Projective, 3);
    let text = doc.to_json();
    print!("{text}");
    assert_eq!(InputDocument::parse(&text).unwrap(), doc);

    let out = cmd_report(&text, false);
    println!("report exit {}", out.code);
    print!("{}", out.stdout);

    let out = cmd_sample(&text, 20, 0, &Tolerances::default(), true);
    println!("sample exit {}", out.code);
    print!("{}", out.stdout);

    for bad in [r#"{"m": 2, "gamma": {"rows": [["1","1"]], "rhs": ["1/0"]}}"#, r#"{"m": 2, "gamma": {"rows": [["1","1"]], "rhs": ["-1"]}}"#] {
        let out = cmd_validate(bad, false);
        print!("exit {}: {}", out.code, if out.stderr.is_empty() { &out.stdout } else { &out.stderr });
    }
}
