use prym::geometry::{route, Obstacles};
use prym::Complex64;

fn c(re: f64, im: f64) -> Complex64 { Complex64::new(re, im) }

fn main() {
    // replicate the g1-forced D~1 route: 0.84 -> -1.16
    let mut obs = Obstacles::new();
    obs.add_point(c(0.0, 0.0), 0.08);
    obs.add_capsule(c(1.0, 0.0), c(41.0, 0.0), 0.04);   // own ray cut
    obs.add_capsule(c(-1.0, 0.0), c(0.0, 0.0), 0.04);   // own segment cut
    match route(c(0.84, 0.0), c(-1.16, 0.0), &obs, 0.25) {
        Ok(p) => println!("route ok: {p:?}"),
        Err(e) => println!("route ERR: {e}"),
    }
}
