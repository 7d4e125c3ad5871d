use a22::analyzer::{build_W, graded_dimension};
use a22::fock::{buckets_upto, Beta, BucketKey, FockSpace, FockVector, OpKey, Root};
use a22::lattice::{Lattice, LatticeVector};
use a22::scalar::{QuarterInt, Q};

fn q(x: i64) -> QuarterInt {
    QuarterInt::new(x)
}

fn beta(b: Beta) -> LatticeVector {
    match b {
        Beta::B0 => LatticeVector::ALPHA12,
        Beta::B2 => LatticeVector::MU,
    }
}

// a spread of vectors across several charges
fn samples(fs: &FockSpace) -> Vec<FockVector> {
    let vac = FockVector::vacuum();
    let u1 = fs.vertex(Root::A1, q(-1), &vac).unwrap();
    let u31 = fs.vertex(Root::A1, q(-3), &u1).unwrap();
    let mixed = fs.vertex(Root::A2, q(-5), &fs.heis_act(Beta::B2, q(-2), &u31).unwrap()).unwrap();
    let mut sum = fs.heis_act(Beta::B0, q(-4), &u1).unwrap();
    sum.add(&fs.vertex(Root::A12, q(-4), &u1).unwrap());
    vec![vac, u1, u31, mixed, sum]
}

#[test]
fn heisenberg_vertex_commutator() {
    let fs = FockSpace::new(32);
    let lat = Lattice::a2();
    for v in samples(&fs) {
        for (b, ms) in [(Beta::B0, [-8, -4, 4]), (Beta::B2, [-6, -2, 2])] {
            for m4 in ms {
                for r in Root::ALL {
                    let ns: [i64; 3] = if r == Root::A12 { [-8, -4, 0] } else { [-5, -1, 3] };
                    for n4 in ns {
                        let mut lhs = fs.heis_act(b, q(m4), &fs.vertex(r, q(n4), &v).unwrap()).unwrap();
                        lhs.sub(&fs.vertex(r, q(n4), &fs.heis_act(b, q(m4), &v).unwrap()).unwrap());
                        let c = lat.gram(beta(b), r.vec());
                        let rhs = fs.vertex(r, q(m4 + n4), &v).unwrap().scaled(&Q::int(c).into());
                        assert_eq!(lhs, rhs, "[{b:?}({m4}/4), {}({n4}/4)]", r.name());
                    }
                }
            }
        }
    }
}

#[test]
fn heisenberg_commutator() {
    let fs = FockSpace::new(20);
    let lat = Lattice::a2();
    for v in samples(&fs) {
        for (b, ms) in [(Beta::B0, [-8, -4, 4, 8]), (Beta::B2, [-6, -2, 2, 6])] {
            for m4 in ms {
                let mut lhs = fs.heis_act(b, q(m4), &fs.heis_act(b, q(-m4), &v).unwrap()).unwrap();
                lhs.sub(&fs.heis_act(b, q(-m4), &fs.heis_act(b, q(m4), &v).unwrap()).unwrap());
                let c = Q::new(m4, 4) * Q::int(lat.gram(beta(b), beta(b)));
                assert_eq!(lhs, v.scaled(&c.into()));
            }
        }
        // β0 and β2 modes commute
        let a = fs.heis_act(Beta::B0, q(4), &fs.heis_act(Beta::B2, q(-2), &v).unwrap()).unwrap();
        let c = fs.heis_act(Beta::B2, q(-2), &fs.heis_act(Beta::B0, q(4), &v).unwrap()).unwrap();
        assert_eq!(a, c);
    }
}

// e_{α1} is injective on every Fock bucket; Δ is onto its target in charge ≥ 0
#[test]
fn e_alpha1_and_delta_ranks_on_fock_buckets() {
    let fs = FockSpace::new(30);
    for src in buckets_upto(12) {
        let n = fs.bucket(src).len();
        assert_eq!(fs.matrix(OpKey::EAlpha1, src).unwrap().rank(), n, "e_a1 on {src:?}");
        let tgt = BucketKey::new(src.charge, src.qweight - 2 * src.charge);
        if src.charge >= 0 && tgt.qweight >= 0 {
            assert_eq!(fs.matrix(OpKey::Delta, src).unwrap().rank(), fs.bucket(tgt).len(), "delta on {src:?}");
        }
    }
}

#[test]
fn table_independent_of_thread_count() {
    let fs = FockSpace::new(24);
    let tables: Vec<_> = [1, 3]
        .into_iter()
        .map(|n| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap();
            graded_dimension(&pool.install(|| build_W(&fs, 24)).unwrap())
        })
        .collect();
    assert_eq!(tables[0], tables[1]);
}
