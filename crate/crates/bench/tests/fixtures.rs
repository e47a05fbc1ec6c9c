use reeb_ruling::reflex_vertices;
use reeb_ruling_bench::{lower_bound, random, SPIKES};

#[test]
fn fixtures_are_valid() {
    let p = lower_bound(SPIKES[0]);
    assert_eq!(p.n(), 2 * SPIKES[0]);
    assert_eq!(reflex_vertices(&p).len(), SPIKES[0]);
    assert_eq!(random(24, 1).n(), 24);
}
