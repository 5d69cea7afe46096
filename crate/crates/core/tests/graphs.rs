use std::fs;

use fatrec_core::correlators::{CacheFile, CacheLock, Correlators};
use fatrec_core::graphspace::{enumerate, graph_sum_to_tpoly, oracle_correlator};
use fatrec_core::{Error, FatGraph};
use proptest::prelude::*;

/// Random perfect matching on `h` half-edges, as an `alpha` word.
fn matching(h: usize, picks: &[usize]) -> Vec<usize> {
    let mut free: Vec<usize> = (0..h).collect();
    let mut alpha = vec![0; h];
    let mut i = 0;
    while !free.is_empty() {
        let a = free.remove(0);
        let b = free.remove(picks[i] % free.len());
        alpha[a] = b;
        alpha[b] = a;
        i += 1;
    }
    alpha
}

fn profile() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..6, 1..4).prop_filter("even total", |mu| {
        mu.iter().sum::<usize>() % 2 == 0 && mu.iter().sum::<usize>() <= 10
    })
}

proptest! {
    #[test]
    fn euler_characteristic(mu in profile(), picks in prop::collection::vec(0usize..64, 8)) {
        let h: usize = mu.iter().sum();
        let g = FatGraph::new(mu.clone(), matching(h, &picks)).unwrap();
        let (v, e, f) = (g.n_vertices() as i64, g.n_edges() as i64, g.face_count() as i64);
        let k = g.components().len() as i64;
        // Σ over components of (2 - 2 g_i) = V - E + F
        let sum: i64 = g.component_genera().iter().map(|gi| 2 - 2 * gi).sum();
        prop_assert_eq!(sum, v - e + f);
        prop_assert_eq!(g.genus(), g.component_genera().iter().sum::<i64>() - k + 1);
    }

    #[test]
    fn canonical_form_is_rotation_invariant(
        mu in profile(),
        picks in prop::collection::vec(0usize..64, 8),
        turns in prop::collection::vec(0usize..8, 3),
    ) {
        let h: usize = mu.iter().sum();
        let g = FatGraph::new(mu.clone(), matching(h, &picks)).unwrap();
        let r: Vec<usize> = mu.iter().zip(&turns).map(|(&m, &t)| t % m).collect();
        let rotated = g.rotate(&r);
        prop_assert_eq!(rotated.canonical(), g.canonical());
        prop_assert_eq!(rotated.aut_order(), g.aut_order());
    }

    #[test]
    fn text_form_round_trips(mu in profile(), picks in prop::collection::vec(0usize..64, 8)) {
        let h: usize = mu.iter().sum();
        let g = FatGraph::new(mu.clone(), matching(h, &picks)).unwrap();
        let back: FatGraph = g.to_string().parse().unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn recursion_matches_enumeration(mu in profile()) {
        let table = Correlators::new();
        for g in 0..=2 {
            let classes = graph_sum_to_tpoly(&enumerate(g, &mu).unwrap());
            prop_assert_eq!(&classes, &oracle_correlator(g, &mu).unwrap());
            prop_assert_eq!(table.get(g, &mu).unwrap(), classes);
        }
    }
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.json");
    let table = Correlators::new();
    table.get(1, &[4, 2, 2]).unwrap();
    table.save(&path).unwrap();
    let first = fs::read_to_string(&path).unwrap();

    let loaded = Correlators::load(&path).unwrap();
    assert_eq!(loaded.entries(), table.entries());
    assert!(loaded.audit().unwrap().is_empty());
    loaded.save(&path).unwrap();
    assert_eq!(fs::read_to_string(&path).unwrap(), first);
}

#[test]
fn cache_failures() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.json");
    assert!(Correlators::load(&path).unwrap().is_empty());

    fs::write(&path, "{\"version\":1,\"entries\":[").unwrap();
    assert!(matches!(
        Correlators::load(&path),
        Err(Error::CacheCorrupt { .. })
    ));
    fs::write(&path, "{\"version\":7,\"entries\":[]}").unwrap();
    assert!(matches!(
        Correlators::load(&path),
        Err(Error::CacheVersion { found: 7, .. })
    ));

    let held = CacheLock::acquire(&path).unwrap();
    assert!(matches!(
        CacheLock::acquire(&path),
        Err(Error::CacheLocked(_))
    ));
    drop(held);
    assert!(CacheLock::acquire(&path).is_ok());
}

#[test]
fn empty_cache_file() {
    let table = Correlators::new();
    assert_eq!(
        CacheFile::from_table(&table).to_json(),
        "{\"version\":1,\"entries\":[]}"
    );
}
