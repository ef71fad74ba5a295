use holonomy::census::{classify, Bounds};
use holonomy::graph::Graph;

#[test]
#[ignore]
fn probe_pyramid() {
    let g = Graph::new(5, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 4), (2, 4), (3, 4)])
        .unwrap();
    let r = classify(&g, &Bounds::default()).unwrap();
    println!("sb {} jf {} phi {:?}", r.series_bound, r.finiteness_bound, r.lcs_ranks);
}
