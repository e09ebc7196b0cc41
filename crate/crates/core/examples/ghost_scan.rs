//! Times the ghost search in the default box for every signature with q <= 13.

use fermat53::ghost::{search, GhostBox, DEFAULT_BUDGET};

fn main() {
    for (q, r) in [(5, 3), (7, 3), (7, 5), (11, 3), (11, 5), (11, 7), (13, 3), (13, 5), (13, 7), (13, 11)] {
        let t = std::time::Instant::now();
        let g = search(q, r, &GhostBox::default(), DEFAULT_BUDGET).unwrap();
        let v: Vec<String> = g.iter().map(|x| x.t0(q, r).to_string()).collect();
        println!("({},{}) {:?} {:?}", q, r, v, t.elapsed());
    }
}
