use std::collections::HashMap;

use crate::error::{invalid, Result};

fn pairs(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// Adjusted Rand index between two labelings of the same items.
///
/// Label values are arbitrary identifiers. When both labelings are trivial in
/// the same way (all in one cluster, or all singletons) the index is 1.
pub fn adjusted_rand_index(truth: &[usize], predicted: &[usize]) -> Result<f64> {
    if truth.len() != predicted.len() {
        return Err(invalid("labels", format!("{} vs {} labels", truth.len(), predicted.len())));
    }
    if truth.is_empty() {
        return Err(invalid("labels", "no labels"));
    }
    let mut joint: HashMap<(usize, usize), u64> = HashMap::new();
    let mut rows: HashMap<usize, u64> = HashMap::new();
    let mut cols: HashMap<usize, u64> = HashMap::new();
    for (&a, &b) in truth.iter().zip(predicted) {
        *joint.entry((a, b)).or_default() += 1;
        *rows.entry(a).or_default() += 1;
        *cols.entry(b).or_default() += 1;
    }
    // Integer pair counts keep the result independent of map iteration order.
    let index = joint.values().map(|&c| pairs(c)).sum::<u64>() as f64;
    let sum_rows = rows.values().map(|&c| pairs(c)).sum::<u64>() as f64;
    let sum_cols = cols.values().map(|&c| pairs(c)).sum::<u64>() as f64;
    let expected = sum_rows * sum_cols / pairs(truth.len() as u64).max(1) as f64;
    let max_index = (sum_rows + sum_cols) / 2.0;
    if max_index == expected {
        return Ok(1.0);
    }
    Ok((index - expected) / (max_index - expected))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_up_to_renaming() {
        assert_eq!(adjusted_rand_index(&[0, 0, 1, 1], &[5, 5, 2, 2]).unwrap(), 1.0);
        assert_eq!(adjusted_rand_index(&[0, 0, 0], &[1, 1, 1]).unwrap(), 1.0);
        assert_eq!(adjusted_rand_index(&[0, 1, 2], &[0, 1, 2]).unwrap(), 1.0);
    }

    #[test]
    fn reference_values() {
        // Pair counts: index 2, rows 6, cols 3, total 15, so
        // (2 - 6*3/15) / ((6 + 3)/2 - 6*3/15) = 8/33.
        let a = adjusted_rand_index(&[0, 0, 0, 1, 1, 1], &[0, 0, 1, 1, 2, 2]).unwrap();
        assert!((a - 8.0 / 33.0).abs() < 1e-12, "{a}");
        let b = adjusted_rand_index(&[0, 0, 1, 1], &[0, 1, 0, 1]).unwrap();
        assert!((b + 0.5).abs() < 1e-12, "{b}");
    }

    #[test]
    fn length_mismatch() {
        assert!(adjusted_rand_index(&[0, 1], &[0]).is_err());
        assert!(adjusted_rand_index(&[], &[]).is_err());
    }
}
