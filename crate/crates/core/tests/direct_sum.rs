//! Witnesses on the summands of `V₁ ⊕ V₂` combine into witnesses on the sum.
//!
//! With `K_i` the kernel on `V_i` and `P_i` the preimage of `O_π(G/K_i)`,
//! a component pair `(w₁, w₂)` qualifies when its joint centralizer in `H`
//! lies in `P_i`. Adding qualifying pairs from both summands must give a pair
//! whose joint centralizer in `H` lies in `O_π(G)`.

use hallbound::field::make_field;
use hallbound::linear::{Matrix, MatrixGroup, ModuleSpace};
use hallbound::perm::{PermGroup, Permutation};
use hallbound::pi::PiSet;
use hallbound::radicals::{hall_subgroup, o_pi};
use hallbound::Limits;

fn mat(p: u64, k: u32, rows: &[Vec<u32>]) -> Matrix {
    Matrix::from_rows(make_field(p, k).unwrap(), rows).unwrap()
}

struct Instance {
    name: &'static str,
    whole: MatrixGroup,
    parts: [MatrixGroup; 2],
}

fn instance(name: &'static str, gens: Vec<[Matrix; 2]>) -> Instance {
    let comps = |i: usize| {
        let m = &gens[0][i];
        hallbound::linear::Component {
            field: m.field().clone(),
            dim: m.dim(),
        }
    };
    let space = ModuleSpace::new(vec![comps(0), comps(1)]).unwrap();
    let whole = MatrixGroup::new(space, gens.iter().map(|g| g.to_vec()).collect(), Limits::default()).unwrap();
    let part = |i: usize| {
        let c = comps(i);
        MatrixGroup::from_matrices(c.field, c.dim, gens.iter().map(|g| g[i].clone()).collect(), Limits::default())
            .unwrap()
    };
    Instance {
        name,
        whole,
        parts: [part(0), part(1)],
    }
}

fn instances() -> Vec<Instance> {
    let gamma = MatrixGroup::semilinear(2, 3, Limits::default()).unwrap();
    let g8: Vec<Matrix> = gamma.generators().iter().map(|b| b[0].clone()).collect();
    vec![
        instance(
            "GL(2,3) x GL(2,2)",
            vec![
                [mat(3, 1, &[vec![1, 1], vec![0, 1]]), mat(2, 1, &[vec![1, 1], vec![0, 1]])],
                [mat(3, 1, &[vec![0, 1], vec![1, 0]]), mat(2, 1, &[vec![0, 1], vec![1, 0]])],
                [mat(3, 1, &[vec![2, 0], vec![0, 2]]), mat(2, 1, &[vec![1, 0], vec![0, 1]])],
            ],
        ),
        instance(
            "Gamma(8) x GL(2,2)",
            vec![
                [g8[0].clone(), mat(2, 1, &[vec![1, 1], vec![0, 1]])],
                [g8[1].clone(), mat(2, 1, &[vec![0, 1], vec![1, 0]])],
            ],
        ),
        instance(
            "GL(1,4) x GL(1,3)",
            vec![
                [mat(2, 2, &[vec![2]]), mat(3, 1, &[vec![1]])],
                [mat(2, 2, &[vec![1]]), mat(3, 1, &[vec![2]])],
            ],
        ),
    ]
}

/// Image in the action on summand `i` of an element of the whole group.
fn restrict(inst: &Instance, i: usize, g: &Permutation) -> Permutation {
    let blocks = inst.whole.matrices_of(g).unwrap();
    inst.parts[i].point_permutation(&blocks[i..=i])
}

#[test]
fn direct_sum_witnesses_combine() {
    for inst in instances() {
        let g = &inst.whole.perm_image().unwrap().group;
        let space = inst.whole.space();
        let primes = hallbound::arith::prime_divisors(g.order());
        let product: u128 = primes.iter().map(|&p| p as u128).product();
        let mut checked = 0;
        for pi in PiSet::all_nonempty_subsets(product) {
            let Ok(h) = hall_subgroup(g, &pi, 0) else { continue };
            let core = o_pi(g, &pi).unwrap();
            let mut qualifying: Vec<Vec<(u64, u64)>> = Vec::new();
            for i in 0..2 {
                let gi = &inst.parts[i].perm_image().unwrap().group;
                let core_i = o_pi(gi, &pi).unwrap();
                let hi = gi
                    .subgroup(h.generators().iter().map(|x| restrict(&inst, i, x)).collect())
                    .unwrap();
                let n = gi.degree() as u32;
                let mut pairs = Vec::new();
                for w2 in 0..n {
                    for w1 in 0..n {
                        let joint: PermGroup = hi.pointwise_stabilizer(&[w1, w2]).unwrap();
                        if joint.generators().iter().all(|x| core_i.contains(x)) {
                            pairs.push((w1 as u64, w2 as u64));
                        }
                    }
                }
                assert!(!pairs.is_empty(), "{}: no witness on summand {i}", inst.name);
                qualifying.push(pairs);
            }
            for &(a1, a2) in &qualifying[0] {
                for &(b1, b2) in &qualifying[1] {
                    let v1 = a1 * space.offset(0) + b1 * space.offset(1);
                    let v2 = a2 * space.offset(0) + b2 * space.offset(1);
                    let joint = h.pointwise_stabilizer(&[v1 as u32, v2 as u32]).unwrap();
                    assert!(
                        joint.generators().iter().all(|x| core.contains(x)),
                        "{}, π={{{pi}}}: ({v1}, {v2}) fails",
                        inst.name
                    );
                    checked += 1;
                }
            }
        }
        assert!(checked > 0, "{}: nothing checked", inst.name);
    }
}

#[test]
fn instances_have_nontrivial_kernels() {
    // the combination is only interesting when neither summand is faithful
    let inst = &instances()[0];
    let g = &inst.whole.perm_image().unwrap().group;
    // the pairing is not a homomorphism, so G is the full product
    assert_eq!(g.order(), 48 * 6);
    for i in 0..2 {
        let gi = &inst.parts[i].perm_image().unwrap().group;
        assert!(gi.order() < g.order(), "summand {i}");
    }
}
