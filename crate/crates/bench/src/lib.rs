//! Shared workloads for the benchmarks.

use cg3_core::tensor_space::enumerate_labels;
use cg3_core::{valid_descents, DescentTriple, HighestVectorLabel, WeightPair};

/// Every (label, descent) cell of the product `(m1, m2) x (n1, n2)`.
pub fn all_cells(m1: i64, m2: i64, n1: i64, n2: i64) -> Vec<(HighestVectorLabel, DescentTriple)> {
    let wp = WeightPair::from_ints(m1, m2, n1, n2).expect("valid weights");
    enumerate_labels(&wp).into_iter().flat_map(|l| valid_descents(&l).into_iter().map(move |d| (l, d))).collect()
}

#[cfg(test)]
mod tests {
    #[test]
    fn fundamental_square_has_nine_cells() {
        assert_eq!(super::all_cells(1, 0, 1, 0).len(), 9);
    }
}
