use prym::curve::involution_data;
use prym::fixtures::all_fixtures;
use prym::homology::{build_adapted_basis, pair_branch_points, BasisParams};
use std::time::Instant;

fn main() {
    let params = BasisParams::default();
    for fx in all_fixtures() {
        let t0 = Instant::now();
        let inv = involution_data(&fx.curve, fx.kind).unwrap();
        let r = pair_branch_points(&fx.curve, &inv, None, &params)
            .and_then(|p| build_adapted_basis(&fx.curve, &inv, &p, &params));
        match r {
            Ok(b) => println!(
                "{:<22} g={} n={} gs={}  symplectic={}  {:?}",
                fx.name, b.g, b.n, b.g_sigma,
                b.is_standard_symplectic(),
                t0.elapsed()
            ),
            Err(e) => println!("{:<22} ERR {e}", fx.name),
        }
    }
}
