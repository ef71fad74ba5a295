use holonomy::census::{classify, Bounds};
use holonomy::graph::enumerate_connected;
use num_bigint::BigInt;

#[test]
#[ignore]
fn probe_deep_unresolved() {
    let six = enumerate_connected(6);
    let bounds = Bounds {
        gb_step_budget: 8_000_000,
        lie_work_cap: BigInt::from(8_000),
        lie_layer_cap: BigInt::from(2_500),
        ..Bounds::default()
    };
    for idx in [109usize, 110, 96, 102, 76, 99, 104] {
        let r = classify(&six[idx], &bounds).unwrap();
        let phi: Vec<String> = r.lcs_ranks.iter().map(|v| v.to_string()).collect();
        println!(
            "{idx}: edges {} sb {} jf {} phi [{}] fg {} fp {} fp1 {} in {} ms",
            r.edges,
            r.series_bound,
            r.finiteness_bound,
            phi.join(","),
            r.finiteness.finitely_generated.as_str(),
            r.finiteness.finitely_presented.as_str(),
            r.finiteness.fp_plus_one.as_str(),
            r.millis
        );
    }
}
