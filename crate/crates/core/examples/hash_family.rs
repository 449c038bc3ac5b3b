//! Perfect hash families by seeded greedy cover, certified exhaustively.

use efforge::hashfam::{build_family, Certification, HashFamily};

fn main() -> efforge::Result<()> {
    for (n, r) in [(4, 2), (6, 2), (6, 4), (8, 4), (10, 6)] {
        let family = build_family(n, r)?;
        println!("n = {n:>2}, r = {r}: {:>3} maps, certified {}", family.len(), family.certified);
    }

    let bad = HashFamily::new(5, 3, vec![vec![1, 2, 3, 1, 2]])?;
    if let Certification::Uncovered(w) = bad.certify() {
        println!("single map misses the subset {w:?}");
    }
    Ok(())
}
