use cg3_bench::all_cells;
use cg3_core::WeightPair;

#[test]
fn cells_span_the_product() {
    for (m1, m2, n1, n2) in [(1, 0, 1, 0), (2, 1, 1, 1), (3, 0, 2, 2)] {
        let wp = WeightPair::from_ints(m1, m2, n1, n2).unwrap();
        assert_eq!(all_cells(m1, m2, n1, n2).len() as i64, wp.product_dimension());
    }
}
