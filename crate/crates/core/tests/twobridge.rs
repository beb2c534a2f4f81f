use quadratic_quandle::alexander::{alexander_polynomial, diagram_smith_form};
use quadratic_quandle::diagram::twobridge_plat;
use quadratic_quandle::families::twobridge::{cf_expand, twist_invariant, twist_polys, TwistSequence};
use quadratic_quandle::gf::{add_mod, enumerate_kappas, FqElt, QuadField};
use quadratic_quandle::invariant::ColoringSpace;
use quadratic_quandle::laurent::IntLaurent;
use quadratic_quandle::linalg::Field;
use quadratic_quandle::report::analyze;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fields(ps: &[u32]) -> Vec<QuadField> {
    ps.iter()
        .flat_map(|&p| enumerate_kappas(p).unwrap().into_iter().map(move |k| QuadField::new(p, k).unwrap()))
        .collect()
}

fn sequences() -> Vec<Vec<(i64, i64)>> {
    vec![
        vec![(1, 1)],
        vec![(1, -1)],
        vec![(2, -3), (1, 4)],
        vec![(1, 2)],
        vec![(-2, 1), (3, -1)],
        vec![(1, 1), (1, 1)],
        vec![(-1, 2), (2, 0)],
        vec![(3, 1), (-1, -2), (1, 1)],
    ]
}

#[test]
fn plat_alexander_polynomial_is_alpha_k_of_nabla() {
    for s in sequences() {
        let seq = TwistSequence::new(s.clone()).unwrap();
        let tp = twist_polys(&seq);
        let want = tp.alpha[tp.k()].eval_laurent(&IntLaurent::nabla());
        let d = twobridge_plat(&s).unwrap().diagram;
        for p in [2u32, 3, 5, 7] {
            let sf = diagram_smith_form(&d, p).unwrap();
            assert_eq!(
                alexander_polynomial(&sf).canonical_associate(),
                want.reduce(p).canonical_associate(),
                "{s:?} p = {p}"
            );
        }
    }
}

#[test]
fn box_boltzmann_contributions() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for s in sequences() {
        let plat = twobridge_plat(&s).unwrap();
        for k in fields(&[2, 3, 5]) {
            let p = k.p();
            let space = ColoringSpace::new(&plat.diagram, &k);
            let th = k.theta();
            let scale = k.mul(k.epsilon(), k.sub(k.conj(th), th));
            debug_assert!(scale.is_rational());
            for _ in 0..20 {
                let coeffs: Vec<FqElt> =
                    (0..space.dim()).map(|_| k.elt(rng.gen_range(0..p as i64), rng.gen_range(0..p as i64))).collect();
                let f = space.combine(&coeffs);
                for b in plat.boxes.iter().filter(|b| !b.crossings.is_empty()) {
                    let got = plat.diagram.crossings()[b.crossings.clone()].iter().fold(0, |acc, c| {
                        let v = k.phi(f[c.rho], f[c.omega]);
                        add_mod(acc, if c.sign > 0 { v } else { (p - v) % p }, p)
                    });
                    // m boxes: twists * eps (conj(theta) - theta) N(f(a) - f(b)); n boxes cancel
                    let want = if b.upper {
                        let n = k.norm(k.sub(f[b.inputs[0]], f[b.inputs[1]]));
                        k.mul(k.scale(n, scale), k.from_fp(b.twists.rem_euclid(p as i64) as u32)).a
                    } else {
                        0
                    };
                    assert_eq!(got, want, "{s:?} p={p} kappa={} box {b:?}", k.kappa());
                }
            }
        }
    }
}

#[test]
fn closed_form_matches_pipeline_on_plats() {
    for s in sequences() {
        let seq = TwistSequence::new(s.clone()).unwrap();
        let d = twobridge_plat(&s).unwrap().diagram;
        for k in fields(&[2, 3, 5, 7]) {
            let fam = twist_invariant(&seq, &k);
            let rep = analyze("plat", &d, &k, Some(1_000_000)).unwrap();
            assert_eq!((fam.nuh, fam.nuh_prime, fam.r, fam.s), (rep.nuh, rep.nuh_prime, rep.r, rep.s), "{s:?} p={}", k.p());
            assert_eq!(fam.phi.coeffs(), &rep.phi[..]);
            assert!(rep.c2 && rep.consistent && rep.brute_agrees != Some(false));
        }
    }
}

#[test]
fn cf_expansion_builds_the_right_knot() {
    // K(5,2) is the figure-eight knot: t^2 - 3t + 1
    let d = twobridge_plat(cf_expand(5, 2).unwrap().pairs()).unwrap().diagram;
    let sf = diagram_smith_form(&d, 7).unwrap();
    assert_eq!(alexander_polynomial(&sf).canonical_associate().to_string(), "t^2+4*t+1");
}
