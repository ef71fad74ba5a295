use std::time::Instant;

use holonomy::census::decone_graph;
use holonomy::dual::koszul_dual;
use holonomy::graph::{enumerate_connected, Graph};
use holonomy::ncgb::buchberger_truncated;
use holonomy::word::{DegLex, FreePoly};
use num_bigint::BigInt;

fn gb_growth(name: &str, g: &Graph, max: usize) {
    let dec = decone_graph(g).unwrap();
    let dual = koszul_dual(&dec.r).unwrap();
    let rels: Vec<FreePoly> = dual.free_relations().cloned().collect();
    let ord = DegLex::natural(dual.num_gens);
    for b in 4..=max {
        let t = Instant::now();
        let gb = buchberger_truncated(&rels, &ord, b, dual.num_gens);
        let dims = gb.hilbert_function(b).unwrap();
        let total: BigInt = (0..=b).map(|d| dims.coeff(d)).sum();
        println!(
            "{name} bound {b}: gb_len {} dim_sum {} in {} ms",
            gb.len(),
            total,
            t.elapsed().as_millis()
        );
        if t.elapsed().as_secs() > 60 {
            break;
        }
    }
}

#[test]
#[ignore]
fn probe_gb_growth() {
    let six = enumerate_connected(6);
    let five = enumerate_connected(5);
    // K4: dense chordal, the known Groebner blowup case
    let k4 = Graph::new(4, (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect())
        .unwrap();
    gb_growth("K4", &k4, 10);
    gb_growth("K5", &five[20], 7);
    gb_growth("K6", &six[111], 6);
    gb_growth("g66", &six[66], 10);
    gb_growth("g35", &six[35], 10);
    gb_growth("g109", &six[109], 10);
    gb_growth("g104", &six[104], 8);
    gb_growth("g76", &six[76], 9);
}
