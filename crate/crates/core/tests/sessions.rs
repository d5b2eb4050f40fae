use gensim_core::corpus;
use gensim_core::similarity::{Certificate, Config, Direction, EngineChoice, Session};

fn session(left: &str, right: &str, engine: EngineChoice) -> Session {
    let mut config = Config::with_engine(engine);
    config.max_vars = 1;
    Session::new(corpus::pair(left, right), config)
}

#[test]
fn chain_matrix_is_engine_independent() {
    let engines = [
        EngineChoice::Unary,
        EngineChoice::Linear,
        EngineChoice::Monolinear,
        EngineChoice::General,
    ];
    let grids: Vec<Vec<Vec<bool>>> = engines
        .iter()
        .map(|&e| {
            let m = session(corpus::CHAIN, corpus::CHAIN, e).matrix().unwrap();
            m.leq
                .iter()
                .map(|row| row.iter().map(|v| v.holds).collect())
                .collect()
        })
        .collect();
    assert!(grids.windows(2).all(|w| w[0] == w[1]));
    // a < b < c and c, d, e mutually similar.
    let leq = &grids[0];
    assert!(leq[0][1] && !leq[1][0]);
    assert!(leq[1][2] && !leq[2][1]);
    assert!((2..5).all(|i| (2..5).all(|j| leq[i][j])));
}

#[test]
fn renamed_chain_matches_original() {
    let s = session(corpus::CHAIN, corpus::CHAIN_RENAMED, EngineChoice::Auto);
    let p = s.pair().clone();
    for (x, y) in [("a", "p"), ("b", "q"), ("c", "r")] {
        let v = s
            .decide_approx(p.left.require(x).unwrap(), p.right.require(y).unwrap())
            .unwrap();
        assert!(v.holds, "{x} ≈ {y}");
    }
}

#[test]
fn backward_certificate_names_the_reversed_pair() {
    let s = session(
        corpus::COLLAPSE_SOURCE,
        corpus::COLLAPSE_TARGET,
        EngineChoice::Auto,
    );
    let p = s.pair().clone();
    let v = s
        .decide_approx(p.left.require("a").unwrap(), p.right.require("c").unwrap())
        .unwrap();
    assert!(!v.holds);
    match v.certificate {
        Certificate::Dominating {
            direction, element, ..
        } => {
            assert_eq!(direction, Direction::Backward);
            assert_eq!(element, "b");
        }
        other => panic!("unexpected certificate {other:?}"),
    }
}

#[test]
fn swap_algebra_is_reflexive_and_transitive() {
    let s = Session::single(&corpus::load(corpus::SWAP), Config::default());
    assert!(s.check_reflexive().unwrap().violations.is_empty());
    assert!(s.check_transitive().unwrap().is_transitive());
}

#[test]
fn combined_algebra_breaks_transitivity() {
    let s = Session::single(&corpus::load(corpus::TRANS_COMBINED), Config::default());
    assert!(!s.check_transitive().unwrap().is_transitive());
}

#[test]
fn oracle_agrees_with_unary_engine_on_successor() {
    let u = session(
        corpus::SUCCESSOR,
        corpus::SUCCESSOR_SWAPPED,
        EngineChoice::Unary,
    )
    .matrix()
    .unwrap();
    let mut config = Config::with_engine(EngineChoice::Oracle);
    config.max_depth = 8;
    config.max_vars = 1;
    let o = Session::new(
        corpus::pair(corpus::SUCCESSOR, corpus::SUCCESSOR_SWAPPED),
        config,
    )
    .matrix()
    .unwrap();
    let holds = |m: &gensim_core::similarity::SimilarityMatrix| -> Vec<Vec<bool>> {
        m.leq
            .iter()
            .map(|r| r.iter().map(|v| v.holds).collect())
            .collect()
    };
    assert_eq!(holds(&u), holds(&o));
}

#[test]
fn every_fixture_parses_and_renders_stably() {
    for (stem, text) in corpus::ALGEBRAS {
        let a = corpus::load(text);
        assert_eq!(
            gensim_core::parse_algebra(&a.render()).unwrap().render(),
            a.render(),
            "{stem}"
        );
    }
}
