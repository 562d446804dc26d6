use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toric_matroids::catalog::{excluded_minor_free, Named};
use toric_matroids::exchange::{check_white_gb, default_white_orders, is_quadratic, symmetric_exchange_set};
use toric_matroids::gb::{ideals_equal, is_groebner, restrict_to_vars};
use toric_matroids::lift::{
    connection_order, direct_sum, lift_connection, lift_series_extension, parallel_connection,
    parallel_extension_generators, series_connection, series_ext_order, series_extension_generators,
    sp_extension_sequence, two_sum, ConnectionIndex, Construction, LiftMode, Step,
};
use toric_matroids::matroid::{is_isomorphic, AnchoredMatroid};
use toric_matroids::oracle::{anchored_bases_matrix, connection_matrix, matroid_toric_gb, toric_gb};
use toric_matroids::{BinomialSet, Matroid, MonomialOrder, VariableId};

use crate::suite::{suite, uniform, with_gb};

fn swap_blocks(v: VariableId) -> VariableId {
    match v {
        VariableId::Basis { block, index } => VariableId::x(3 - block, index as usize),
        other => other,
    }
}

/// Oracle Gröbner basis of an anchored factor, lifted, with its lifted order.
fn lifted_factor(am: &AnchoredMatroid) -> (BinomialSet, MonomialOrder) {
    let mat = anchored_bases_matrix(am);
    let base = mat.default_order();
    let f = toric_gb(&mat, &base).unwrap();
    (
        lift_series_extension(&f, am.gamma(), am.num_bases()).unwrap(),
        series_ext_order(&base, am.gamma()),
    )
}

pub fn connection_lifting() -> String {
    let pairs = [((1, 2), (1, 2)), ((2, 3), (2, 3)), ((2, 3), (2, 4)), ((2, 4), (2, 4))];
    let (mut cases, mut gb_open) = (0, 0);
    for ((r1, n1), (r2, n2)) in pairs {
        let (m1, m2) = (uniform(r1, n1), uniform(r2, n2));
        for c1 in [1, n1] {
            for c2 in [1, n2] {
                let (am1, am2) = (m1.anchor(c1).unwrap(), m2.anchor(c2).unwrap());
                let idx = ConnectionIndex::new(&am1, &am2);
                let (f1t, o1t) = lifted_factor(&am1);
                let (f2t, o2t) = lifted_factor(&am2);
                let (f2t, o2t) = (f2t.rename(swap_blocks), o2t.rename(swap_blocks));
                let n = lift_connection(&f1t, &f2t, idx, LiftMode::N).unwrap();
                let nt = lift_connection(&f1t, &f2t, idx, LiftMode::Ntilde).unwrap();
                let label = format!("U{r1}{n1} at {c1}, U{r2}{n2} at {c2}");
                assert!(
                    restrict_to_vars(&nt, &idx.kept(LiftMode::N)).same_elements(&n),
                    "{label}: restricting Ntilde does not give N"
                );
                let mat = connection_matrix(&am1, &am2).unwrap();
                let truth_order = mat.default_order();
                let truth = toric_gb(&mat, &truth_order).unwrap();
                let n_full = n.with_ambient(truth.ambient().clone()).unwrap();
                assert!(ideals_equal(&n_full, &truth, &truth_order).unwrap(), "{label}: N does not generate");
                let order = connection_order(&o1t, &o2t, idx, LiftMode::N);
                if !is_groebner(&n, &order).unwrap() {
                    gb_open += 1;
                }
                cases += 1;
            }
        }
    }
    format!("{cases} anchored pairs generate; Gröbner under the lifted order in {} (open in {gb_open})", cases - gb_open)
}

/// Exchange binomials with an order from the default list, if one works.
fn exchange_input(m: &Matroid) -> Construction {
    let order = check_white_gb(m, &default_white_orders(m)).unwrap();
    Construction::from_matroid(m, symmetric_exchange_set(m).binomials, order)
}

const CLOSURE_VARS: usize = 30;

struct Tally {
    built: usize,
    groebner: usize,
    skipped: usize,
}

impl Tally {
    fn check(&mut self, what: &str, c: Result<Construction, toric_matroids::lift::LiftError>) {
        let c = c.unwrap_or_else(|e| panic!("{what}: {e}"));
        if c.map.len() > CLOSURE_VARS {
            self.skipped += 1;
            return;
        }
        assert!(is_quadratic(&c.generators), "{what}: output is not quadratic");
        let v = c.verify().unwrap();
        assert!(v.generates, "{what}: output does not generate");
        self.built += 1;
        self.groebner += v.groebner as usize;
    }
}

pub fn closure() -> String {
    let mut t = Tally {
        built: 0,
        groebner: 0,
        skipped: 0,
    };
    let ms: Vec<(String, Matroid)> = suite(5).into_iter().filter(|(_, m)| m.ground_size() > 0).collect();
    let inputs: Vec<(String, Construction)> = ms.iter().map(|(n, m)| (n.clone(), exchange_input(m))).collect();
    for (name, a) in &inputs {
        assert!(is_quadratic(&a.generators));
        let m = &a.matroid;
        for c in 1..=m.ground_size() {
            let o = a.order.as_ref();
            t.check(
                &format!("series extension of {name} at {c}"),
                series_extension_generators(m, c, &a.generators, o),
            );
            t.check(
                &format!("parallel extension of {name} at {c}"),
                parallel_extension_generators(m, c, &a.generators, o),
            );
        }
        let d = m.ground_size();
        let steps = [Step::series(1), Step::parallel(d + 1), Step::series(d)];
        t.check(
            &format!("sp-sequence on {name}"),
            sp_extension_sequence(m, &a.generators, a.order.as_ref(), &steps),
        );
    }
    let small: Vec<&(String, Construction)> = inputs.iter().filter(|(_, c)| c.matroid.ground_size() <= 4).collect();
    for (i, (na, a)) in small.iter().enumerate() {
        for (nb, b) in &small[i..] {
            let (da, db) = (a.matroid.ground_size(), b.matroid.ground_size());
            for (c1, c2) in [(1, 1), (da, db)] {
                let what = format!("{na} at {c1}, {nb} at {c2}");
                t.check(&format!("series connection of {what}"), series_connection(a, c1, b, c2));
                t.check(&format!("parallel connection of {what}"), parallel_connection(a, c1, b, c2));
                let degenerate = |m: &Matroid, c| m.is_loop(c) || m.is_coloop(c);
                if !degenerate(&a.matroid, c1) && !degenerate(&b.matroid, c2) {
                    t.check(&format!("2-sum of {what}"), two_sum(a, c1, b, c2));
                }
            }
        }
    }
    format!(
        "{} quadratic outputs verified ({} also Gröbner); {} over {CLOSURE_VARS} variables skipped",
        t.built, t.groebner, t.skipped
    )
}

pub fn two_sums() -> String {
    let u23 = with_gb(&uniform(2, 3));
    let s = two_sum(&u23, 3, &u23, 3).unwrap();
    assert!(is_isomorphic(&s.matroid, &uniform(3, 4)).is_some(), "2-sum of U23 with itself is not U34");
    assert!(s.generators.is_empty());
    assert!(matroid_toric_gb(&s.matroid).unwrap().is_empty());
    assert!(s.verify().unwrap().generates);

    let mut n = 0;
    let u24 = with_gb(&uniform(2, 4));
    for c1 in 1..=4 {
        for c2 in 1..=3 {
            let t = two_sum(&u24, c1, &u23, c2).unwrap();
            assert!(t.verify().unwrap().generates, "U24 at {c1} with U23 at {c2}");
            n += 1;
        }
    }
    format!("U23 ⊕₂ U23 = U34 with ideal 0; {n} basepoint pairs for U24 ⊕₂ U23")
}

/// Random direct-sum/2-sum tree over non-degenerate uniform leaves.
fn random_tree(rng: &mut ChaCha8Rng, max_bases: usize) -> (String, Construction) {
    let leaves: Vec<(usize, usize)> = (2..=5).flat_map(|n| (1..n).map(move |r| (r, n))).collect();
    let leaf = |rng: &mut ChaCha8Rng| {
        let &(r, n) = leaves.choose(rng).unwrap();
        (format!("U{r}{n}"), exchange_input(&uniform(r, n)))
    };
    let (mut name, mut cur) = leaf(rng);
    let joins = rng.gen_range(2..=3);
    let mut done = 0;
    while done < joins {
        let (ln, l) = leaf(rng);
        let next = if rng.gen_bool(0.5) {
            ("⊕", direct_sum(&cur, &l).unwrap())
        } else {
            let c1 = rng.gen_range(1..=cur.matroid.ground_size());
            let c2 = rng.gen_range(1..=l.matroid.ground_size());
            ("⊕₂", two_sum(&cur, c1, &l, c2).unwrap())
        };
        if next.1.matroid.num_bases() > max_bases {
            if done > 0 && rng.gen_bool(0.3) {
                break;
            }
            continue;
        }
        name = format!("({name} {} {ln})", next.0);
        cur = next.1;
        done += 1;
    }
    (name, cur)
}

pub fn trees() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut names = Vec::new();
    for _ in 0..5 {
        let (name, t) = random_tree(&mut rng, 40);
        assert!(t.order.is_some(), "{name}: a leaf had no Gröbner order");
        assert!(is_quadratic(&t.generators), "{name}: not quadratic");
        assert!(excluded_minor_free(&t.matroid), "{name}: has an excluded minor");
        let v = t.verify().unwrap();
        assert!(v.generates && v.groebner, "{name}: {v:?}");
        names.push(format!("{name}: {} bases", t.matroid.num_bases()));
    }
    for n in Named::ALL {
        assert!(!excluded_minor_free(&n.build()), "{n} reported excluded-minor free");
    }
    names.join("; ")
}
