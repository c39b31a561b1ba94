//! Small numeric helpers shared across modules.

/// Exact binomial coefficient; panics on overflow (parameters here stay at
/// desk scale).
pub fn binomial(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 1..=r {
        acc = acc * (n - r + i) as u128 / i as u128;
    }
    u64::try_from(acc).expect("binomial overflow")
}

#[cfg(test)]
mod tests {
    use super::binomial;

    #[test]
    fn binomial_table() {
        assert_eq!(binomial(7, 2), 21);
        assert_eq!(binomial(16, 2), 120);
        assert_eq!(binomial(15, 3), 455);
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(3, 5), 0);
    }
}
