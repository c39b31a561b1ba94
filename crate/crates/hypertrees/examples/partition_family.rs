//! Build the recursive partition of the (k-1)-subsets of [n] and run the
//! five validity checks: disjointness, completeness, covering, absence of
//! short semicycles in every class, and the class-count bound.
//!
//! Run with: cargo run --example partition_family

use hypertrees::partition::{build_partition, class_count, verify_partition};

fn main() {
    for (n, k) in [(4u32, 3usize), (8, 3), (16, 3), (16, 4)] {
        let family = build_partition(n, k).unwrap();
        let report = verify_partition(&family, k).unwrap();
        println!(
            "n={n} k={k}: {} classes (recurrence predicts {}), checks {}",
            family.class_count(),
            class_count(n, k - 1),
            if report.passed() { "pass" } else { "FAIL" }
        );
    }

    // the smallest split in full
    let family = build_partition(4, 3).unwrap();
    println!("\nthe two classes of the pair partition on [4]:");
    for (i, class) in family.classes().iter().enumerate() {
        let members: Vec<String> = class.iter().map(|e| format!("{{{e}}}")).collect();
        println!("  class {}: {}", i + 1, members.join(" "));
    }

    println!("\nfamily file format:\n{}", family.to_khgpart());
}
