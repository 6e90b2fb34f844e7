//! Parsing a LibSVM snippet, preprocessing it, and streaming shuffled passes.

use implicit_ftrl::data_io::{parse_libsvm, preprocess, shuffled_stream, Task};
use std::io::Cursor;

fn main() {
    let text = "\
# four sparse examples, labels in {0, 1}
1 1:0.9 3:-0.3   # positive
0 2:1.4
1 1:0.2 2:0.1 4:2.0
0 3:0.7 4:-0.7
";
    let raw = parse_libsvm(Cursor::new(text), Task::Classification).unwrap();
    println!("parsed {} examples over {} raw features", raw.examples.len(), raw.dimension);
    for ex in &raw.examples {
        println!("  label {:+} features {:?}", ex.label, ex.features.entries());
    }

    let ds = preprocess(&raw).unwrap();
    println!("\nafter bias + unit-norm (dimension {}):", ds.dimension);
    for ex in &ds.examples {
        println!(
            "  label {:+} norm {:.12} nnz {}",
            ex.label,
            ex.features.norm(),
            ex.features.nnz()
        );
    }

    println!("\nshuffles are seeded and reproducible:");
    for seed in [0, 0, 1] {
        let order: Vec<f64> = shuffled_stream(&ds, seed)
            .iter()
            .map(|e| e.label)
            .collect();
        println!("  seed {seed}: labels {order:?}");
    }
}
