use std::time::Instant;

use holonomy::census::decone_graph;
use holonomy::dual::koszul_dual;
use holonomy::graph::{enumerate_connected, Graph};
use holonomy::ncgb::buchberger_budgeted;
use holonomy::word::{DegLex, FreePoly};

fn achieved(name: &str, g: &Graph, budget: u64) {
    let dec = decone_graph(g).unwrap();
    let dual = koszul_dual(&dec.r).unwrap();
    let rels: Vec<FreePoly> = dual.free_relations().cloned().collect();
    let ord = DegLex::natural(dual.num_gens);
    let t = Instant::now();
    let mut sb = 4;
    while sb < 10 {
        match buchberger_budgeted(&rels, &ord, sb + 1, dual.num_gens, budget) {
            Some(_) => sb += 1,
            None => break,
        }
    }
    println!("{name} budget {budget}: sb {sb} in {} ms", t.elapsed().as_millis());
}

#[test]
#[ignore]
fn probe_budgets() {
    let six = enumerate_connected(6);
    let five = enumerate_connected(5);
    let k4 = Graph::new(4, (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect())
        .unwrap();
    for budget in [500_000u64, 2_000_000, 8_000_000] {
        achieved("K4", &k4, budget);
        achieved("K5", &five[20], budget);
        achieved("K6", &six[111], budget);
        achieved("g66", &six[66], budget);
        achieved("g109", &six[109], budget);
        achieved("g104", &six[104], budget);
        achieved("g76", &six[76], budget);
    }
}
