// Copyright 2026 The sectorkit Developers
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except
// in compliance with the License. You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under
// the License.

//! Acceptance suite: nine criteria, one line each, nonzero exit if any fails.

use std::path::Path;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sectorkit::cocycle::conjugate::{alternative_disjoint, CONJUGATE_EQUATIONS, LEFT_UNIT, RIGHT_UNIT};
use sectorkit::cocycle::verify::{COCYCLE_IDENTITY, DEGENERATE_IDENTITY, HOMOTOPY, TRANSPORT_COVARIANCE};
use sectorkit::cocycle::{
    arrow_space, centre_sites, charge_pair, conjugate, epsilon_with, statistics, tensor, verify_cocycle, Character, CharacterKind,
    Charge, Cocycle, CocycleReport, Frame, StatisticsOptions, VerifyOptions,
};
use sectorkit::morphisms::{functor_z_to_d, morphism_laws, pole_change, round_trip};
use sectorkit::paulinet::{check_net, commutant, generated_algebra, Net, NetAlgebra, NetModel, PauliElement, PauliString};
use sectorkit::poset::axioms::recheck;
use sectorkit::poset::{build_poset, check_axioms, h1, pi1_trivial, Budget, IndexPoset, Pi1Verdict, Verdict};
use sectorkit::regions::{sample_family, FamilyParams, RegionFamily};
use sectorkit::simplicial::Path as SPath;

type Outcome = Result<String, String>;

fn family(json: &str) -> (RegionFamily, IndexPoset) {
    let params: FamilyParams = serde_json::from_str(json).expect("family parameters parse");
    let family = sample_family(&params).expect("family samples");
    let poset = build_poset(&family).expect("poset builds");
    (family, poset)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: u64) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= Duration::from_secs(limit), || format!("took {:.1}s, limit {limit}s", t.as_secs_f64()))
}

const GRID_5X5: &str = r#"{"kind":"slice-grid","extent":[2,2],"radii":["0","1","2"],"group":"dihedral"}"#;
const CHAIN: &str = r#"{"kind":"cone-grid","extent":[4],"radii":["1/10","11/10","21/10"],"group":"trivial"}"#;

fn net_frame(json: &str, model: NetModel) -> (Arc<Frame>, RegionFamily) {
    let (family, poset) = family(json);
    let net = Net::from_family(&family, poset, model).expect("net builds");
    (Arc::new(Frame::new(net)), family)
}

fn boson(frame: &Arc<Frame>, family: &RegionFamily, kind: CharacterKind) -> Arc<Cocycle> {
    let actions: Vec<_> = family.symmetries.iter().map(|s| s.action.clone()).collect();
    let chi = Character::from_actions(kind, &actions).expect("character");
    Arc::new(charge_pair(frame.clone(), centre_sites(family).expect("centres"), Charge::Z, &chi).expect("cocycle"))
}

fn all_hold(report: &CocycleReport) -> Result<(), String> {
    match report.first_failure() {
        None => Ok(()),
        Some(c) => Err(format!("{} is {:?}: {:?}", c.check, c.verdict, c.witness)),
    }
}

fn instances(report: &CocycleReport, name: &str) -> u64 {
    report.check(name).map_or(0, |c| c.instances_checked)
}

fn low_dimension_k6() -> Outcome {
    let start = Instant::now();
    let (_, line) = family(CHAIN);
    let ax = check_axioms(&line, Budget::default());
    let Verdict::Fails { witness } = &ax.k6 else { return Err(format!("1D slice: K6 is {:?}", ax.k6)) };
    ensure(recheck(&line, 6, witness), || format!("1D witness does not recheck: {witness:?}"))?;
    let (_, space) = family(
        r#"{"kind":"cone-orbits","layers":[
            {"point":[2,1,1],"radius":"1/10"},{"point":[3,1,0],"radius":"1/10"},
            {"point":[2,2,1],"radius":"11/10"},{"point":[3,1,1],"radius":"11/10"}],"group":"octahedral"}"#,
    );
    ensure(space.len() <= 300, || format!("3D sample has {} elements", space.len()))?;
    let ax3 = check_axioms(&space, Budget::default());
    ensure(ax3.k6.is_pass(), || format!("3D slice: K6 is {:?}", ax3.k6))?;
    within(start, 10)?;
    Ok(format!("1D K6 fails at {:?}, 3D ({} elements) K6 {}", witness.elements, space.len(), ax3.k6.name()))
}

fn pi1_anchor() -> Outcome {
    let start = Instant::now();
    let (_, arcs) = family(r#"{"kind":"circle-arcs","n":12,"radii":["1/12","1/6"]}"#);
    let h = h1(&arcs).map_err(|e| e.to_string())?;
    ensure(h.rank == 1 && h.torsion.is_empty(), || format!("circle arcs: H1 {h:?}"))?;
    let (_, caps) = family(
        r#"{"kind":"sphere-caps","layers":[{"orbit":"faces","radius":"1/12"},{"orbit":"edges","radius":"1/3"},{"orbit":"vertices","radius":"2/3"}]}"#,
    );
    let hc = h1(&caps).map_err(|e| e.to_string())?;
    ensure(hc.rank == 0 && hc.torsion.is_empty(), || format!("sphere caps: H1 {hc:?}"))?;
    let pi = pi1_trivial(&caps, 0, Budget::default());
    ensure(matches!(pi, Pi1Verdict::Trivial { .. }), || format!("sphere caps: pi1 {pi:?}"))?;
    within(start, 30)?;
    Ok(format!("arcs H1 = Z, caps ({} elements) H1 = 0 and pi1 trivial", caps.len()))
}

fn cocycle_identities() -> Outcome {
    let start = Instant::now();
    let (frame, fam) = net_frame(GRID_5X5, NetModel::EvenZ2);
    ensure(frame.net().sites <= 25, || "too many qubits".into())?;
    let mut detail = Vec::new();
    for kind in [CharacterKind::Trivial, CharacterKind::Determinant] {
        let x = boson(&frame, &fam, kind);
        let r = verify_cocycle(&x, &VerifyOptions::seeded(20260101));
        all_hold(&r)?;
        let tri = frame.two_simplices().len() as u64;
        let g = frame.group_len() as u64;
        ensure(instances(&r, COCYCLE_IDENTITY) >= tri * g * g, || format!("cocycle identity on {} instances", instances(&r, COCYCLE_IDENTITY)))?;
        ensure(instances(&r, DEGENERATE_IDENTITY) > 0, || "no degenerate instances".into())?;
        ensure(instances(&r, HOMOTOPY) >= 50, || format!("{} homotopic pairs", instances(&r, HOMOTOPY)))?;
        ensure(instances(&r, TRANSPORT_COVARIANCE) >= 50, || format!("{} transport samples", instances(&r, TRANSPORT_COVARIANCE)))?;
        detail.push(format!("{kind:?}: {} identity instances", instances(&r, COCYCLE_IDENTITY)));
    }
    within(start, 60)?;
    Ok(detail.join(", "))
}

fn statistics_phases() -> Outcome {
    let start = Instant::now();
    let (frame, fam) = net_frame(GRID_5X5, NetModel::EvenZ2);
    let x = boson(&frame, &fam, CharacterKind::Trivial);
    let s = statistics(&x, &StatisticsOptions { seed: 7, path_pairs: 10 }).map_err(|e| e.to_string())?;
    ensure(s.simple && s.chi == Some(1) && s.dimension == Some(1), || format!("boson statistics {s:?}"))?;
    ensure(s.path_dependence.values.len() == 1 && s.path_dependence.samples >= 10, || format!("boson path dependence {:?}", s.path_dependence))?;

    let (cf, cfam) = net_frame(CHAIN, NetModel::EvenFermion);
    let y = Arc::new(charge_pair(cf.clone(), centre_sites(&cfam).map_err(|e| e.to_string())?, Charge::Majorana, &Character::trivial(1)).map_err(|e| e.to_string())?);
    let p = cf.poset();
    // a middle element with a disjoint element on each side
    let a = (0..p.len()).find(|&a| alternative_disjoint(&y, a).len() >= 2 && p.components_within(p.complement_set(a)).len() == 2).ok_or("no element with two lateral sides")?;
    let minus_one = PauliElement::scalar(-sectorkit::scalar::Gauss::one());
    for side in p.components_within(p.complement_set(a)) {
        let q = cf.route(a, side[0]).map_err(|e| e.to_string())?;
        let e = epsilon_with(&y, &y, &SPath::trivial(a), &q).map_err(|e| e.to_string())?;
        ensure(e == minus_one, || format!("epsilon via {} is {e}", p.ids[side[0]]))?;
    }
    let sf = statistics(&y, &StatisticsOptions { seed: 7, path_pairs: 10 }).map_err(|e| e.to_string())?;
    ensure(sf.chi == Some(-1) && sf.path_dependence.annotation.is_some(), || format!("fermion statistics {sf:?}"))?;
    ensure(check_axioms(p, Budget::default()).k6.is_fail(), || "chain K6 does not fail".into())?;
    within(start, 60)?;
    Ok(format!("boson chi +1 d 1 over {} samples, fermion epsilon -1 on both sides of {}", s.path_dependence.samples, p.ids[a]))
}

fn conjugation() -> Outcome {
    let start = Instant::now();
    let (frame, fam) = net_frame(GRID_5X5, NetModel::EvenZ2);
    let x = boson(&frame, &fam, CharacterKind::Trivial);
    let c = conjugate(&x).map_err(|e| e.to_string())?;
    for check in &c.checks {
        ensure(check.holds(), || format!("{} is {:?}: {:?}", check.check, check.verdict, check.witness))?;
    }
    for name in [LEFT_UNIT, RIGHT_UNIT, CONJUGATE_EQUATIONS] {
        ensure(c.checks.iter().any(|k| k.check == name), || format!("{name} missing"))?;
    }
    all_hold(&verify_cocycle(&c.xbar, &VerifyOptions::seeded(5)))?;
    let id = Cocycle::identity(frame.clone());
    for t in [tensor(&x, &c.xbar), tensor(&c.xbar, &x)] {
        ensure(t.map_err(|e| e.to_string())?.values() == id.values(), || "tensor with the conjugate is not the unit".into())?;
    }
    let space = arrow_space(&x, &x).map_err(|e| e.to_string())?;
    ensure(space.is_scalar(), || format!("(X, X) has dimension {}", space.dim()))?;
    within(start, 60)?;
    Ok("conjugate verified, both tensor products equal the unit, (X, X) scalar".into())
}

fn morphism_law_suite() -> Outcome {
    let start = Instant::now();
    let (frame, fam) = net_frame(GRID_5X5, NetModel::EvenZ2);
    let x = boson(&frame, &fam, CharacterKind::Trivial);
    let r = morphism_laws(&x).map_err(|e| e.to_string())?;
    all_hold(&r)?;
    ensure(r.checks.len() == 8, || format!("{} law checks", r.checks.len()))?;
    within(start, 120)?;
    let total: u64 = r.checks.iter().map(|c| c.instances_checked).sum();
    Ok(format!("8 laws over {total} instances"))
}

fn functor_round_trip() -> Outcome {
    let start = Instant::now();
    let (frame, fam) = net_frame(GRID_5X5, NetModel::EvenZ2);
    let x = boson(&frame, &fam, CharacterKind::Determinant);
    let p = frame.poset();
    let (a, b) = (p.index_of("b000").map_err(|e| e.to_string())?, p.index_of("b037").map_err(|e| e.to_string())?);
    let eq = round_trip(&x, a).map_err(|e| e.to_string())?;
    ensure(eq.check.holds() && eq.unitary.is_unitary(), || format!("round trip: {:?}", eq.check))?;
    let obj = functor_z_to_d(&x).map_err(|e| e.to_string())?;
    let ch = pole_change(&obj, a, b).map_err(|e| e.to_string())?;
    ensure(ch.check.holds() && ch.unitary.is_unitary(), || format!("pole change: {:?}", ch.check))?;
    within(start, 60)?;
    Ok(format!("round trip identical: {}, pole change unitary verified", eq.identical))
}

/// Dense `2^n x 2^n` matrix of a Pauli string; phases are irrelevant to spans and commutants.
fn dense(s: &PauliString, n: usize) -> DMatrix<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let mut m = DMatrix::from_element(1, 1, one);
    for site in (0..n).rev() {
        let (x, z) = ((s.x >> site) & 1 == 1, (s.z >> site) & 1 == 1);
        let local = match (x, z) {
            (false, false) => DMatrix::from_row_slice(2, 2, &[one, zero, zero, one]),
            (true, false) => DMatrix::from_row_slice(2, 2, &[zero, one, one, zero]),
            (false, true) => DMatrix::from_row_slice(2, 2, &[one, zero, zero, -one]),
            (true, true) => DMatrix::from_row_slice(2, 2, &[zero, -i, i, zero]),
        };
        m = m.kronecker(&local);
    }
    m
}

fn rank(vectors: &[DMatrix<Complex64>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let len = vectors[0].len();
    let m = DMatrix::from_fn(len, vectors.len(), |r, c| vectors[c][r]);
    m.rank(1e-9)
}

/// Complex span of all products of `gens`.
fn dense_algebra(gens: &[DMatrix<Complex64>], dim: usize) -> Vec<DMatrix<Complex64>> {
    let mut basis = vec![DMatrix::identity(dim, dim)];
    let mut frontier = basis.clone();
    while let Some(m) = frontier.pop() {
        for g in gens {
            let p = &m * g;
            let mut trial = basis.clone();
            trial.push(p.clone());
            if rank(&trial) > basis.len() {
                basis.push(p.clone());
                frontier.push(p);
            }
        }
    }
    basis
}

/// Basis of the matrices commuting with every generator.
fn dense_commutant(gens: &[DMatrix<Complex64>], dim: usize) -> Vec<DMatrix<Complex64>> {
    let id = DMatrix::<Complex64>::identity(dim, dim);
    let n = dim * dim;
    let mut system = DMatrix::<Complex64>::zeros(n * gens.len().max(1), n);
    for (k, g) in gens.iter().enumerate() {
        // vec(XG - GX) = (G^T ⊗ I - I ⊗ G) vec(X) in column-major order
        let block = g.transpose().kronecker(&id) - id.kronecker(g);
        system.view_mut((k * n, 0), (n, n)).copy_from(&block);
    }
    let svd = system.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors");
    let mut sv = svd.singular_values.as_slice().to_vec();
    sv.resize(n, 0.0);
    (0..n)
        .filter(|&r| sv[r] < 1e-9)
        .map(|r| DMatrix::from_fn(dim, dim, |i, j| v_t[(r, i + j * dim)].conj()))
        .collect()
}

fn dense_intersection_dim(a: &[DMatrix<Complex64>], b: &[DMatrix<Complex64>]) -> usize {
    let both: Vec<_> = a.iter().chain(b).cloned().collect();
    rank(a) + rank(b) - rank(&both)
}

fn random_string(rng: &mut ChaCha8Rng, n: usize) -> PauliString {
    let mask = (1u128 << n) - 1;
    PauliString::new(rng.gen::<u128>() & mask, rng.gen::<u128>() & mask)
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(20260108);
    let mut duality_instances = 0;
    for instance in 0..20 {
        let n = rng.gen_range(2..=4);
        let dim = 1 << n;
        let all = (1u128 << n) - 1;
        let gens: Vec<PauliString> = (0..rng.gen_range(1..=4)).map(|_| random_string(&mut rng, n)).collect();
        let a = generated_algebra(&gens, all).map_err(|e| e.to_string())?;
        let comm = commutant(&a, &NetAlgebra::full(all));
        let g_dense: Vec<_> = gens.iter().map(|g| dense(g, n)).collect();
        let c_dense = dense_commutant(&g_dense, dim);
        ensure(c_dense.len() == 1 << comm.dim(), || format!("instance {instance}: dense commutant {} vs F2 2^{}", c_dense.len(), comm.dim()))?;
        let c_strings: Vec<_> = comm.subspace.elements().iter().map(|s| dense(s, n)).collect();
        ensure(rank(&c_strings) == c_strings.len() && dense_intersection_dim(&c_strings, &c_dense) == c_dense.len(), || {
            format!("instance {instance}: F2 commutant strings do not span the dense commutant")
        })?;

        // relative duality: region sites versus the rest, with the global algebra generated by both
        let region = rng.gen_range(1..all);
        let rest = all & !region;
        let own: Vec<PauliString> = (0..rng.gen_range(1..=3)).map(|_| random_string(&mut rng, n)).map(|s| PauliString::new(s.x & region, s.z & region)).collect();
        let other: Vec<PauliString> = (0..rng.gen_range(1..=3)).map(|_| random_string(&mut rng, n)).map(|s| PauliString::new(s.x & rest, s.z & rest)).collect();
        let global_gens: Vec<PauliString> = own.iter().chain(&other).copied().collect();
        let local = generated_algebra(&own, region).map_err(|e| e.to_string())?;
        let global = generated_algebra(&global_gens, all).map_err(|e| e.to_string())?;
        let dual = commutant(&generated_algebra(&other, rest).map_err(|e| e.to_string())?, &global);
        let f2_holds = dual.subspace == local.subspace;
        let own_d: Vec<_> = own.iter().map(|s| dense(s, n)).collect();
        let other_d: Vec<_> = other.iter().map(|s| dense(s, n)).collect();
        let global_d: Vec<_> = global_gens.iter().map(|s| dense(s, n)).collect();
        let local_alg = dense_algebra(&own_d, dim);
        let dual_dense = dense_intersection_dim(&dense_algebra(&global_d, dim), &dense_commutant(&other_d, dim));
        let dense_holds = dual_dense == local_alg.len();
        ensure(f2_holds == dense_holds, || format!("instance {instance}: F2 duality {f2_holds}, dense {dense_holds}"))?;
        duality_instances += 1;
    }
    // the net checker itself on a three-site chain, every model
    let chain = r#"{"kind":"cone-grid","extent":[1],"radii":["1/10","11/10"],"group":"reflection"}"#;
    let mut verdicts = Vec::new();
    for model in [NetModel::Full, NetModel::EvenZ2, NetModel::EvenFermion] {
        let (fam, poset) = family(chain);
        let net = Net::from_family(&fam, poset, model).map_err(|e| e.to_string())?;
        let n = net.sites;
        let dim = 1 << n;
        let report = check_net(&net);
        let global_d: Vec<_> = net.global_algebra().subspace.basis().iter().map(|s| dense(s, n)).collect();
        let global_alg = dense_algebra(&global_d, dim);
        for (o, entry) in report.duality.iter().enumerate() {
            let comp: Vec<_> = net.complement_algebra(o).subspace.basis().iter().map(|s| dense(s, n)).collect();
            let own: Vec<_> = net.algebra(o).subspace.basis().iter().map(|s| dense(s, n)).collect();
            let dual_dim = dense_intersection_dim(&global_alg, &dense_commutant(&comp, dim));
            let own_alg = dense_algebra(&own, dim);
            let dense_holds = dual_dim == own_alg.len() && dense_intersection_dim(&own_alg, &global_alg) == own_alg.len();
            ensure(entry.verdict.is_pass() == dense_holds, || format!("{model:?} {}: checker {:?}, dense {dense_holds}", entry.element, entry.verdict))?;
            duality_instances += 1;
            verdicts.push(dense_holds);
        }
    }
    within(start, 120)?;
    let holds = verdicts.iter().filter(|v| **v).count();
    Ok(format!("20 commutants agree, {duality_instances} duality verdicts agree ({holds} of {} net entries hold)", verdicts.len()))
}

fn determinism() -> Outcome {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios");
    let bin = env!("CARGO_BIN_EXE_sectorkit");
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut names = Vec::new();
    for name in ["grid-boson", "chain-fermion", "arc-circle"] {
        let config = root.join(format!("{name}.json"));
        let mut outputs = Vec::new();
        for (run, jobs) in [(0, "1"), (1, "4")] {
            let out = tmp.path().join(format!("{name}-{run}"));
            let status = Command::new(bin).args(["all", "--config"]).arg(&config).arg("--out").arg(&out).args(["--jobs", jobs]).status().map_err(|e| e.to_string())?;
            ensure(status.code() == Some(0), || format!("{name}: exit {status}"))?;
            outputs.push(std::fs::read(out.join("report.json")).map_err(|e| e.to_string())?);
        }
        ensure(outputs[0] == outputs[1], || format!("{name}: report.json differs between runs"))?;
        names.push(name);
    }
    Ok(format!("{} byte-identical across reruns with 1 and 4 jobs", names.join(", ")))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("low-dimension K6 counterexample", low_dimension_k6),
        ("pi1 anchor", pi1_anchor),
        ("cocycle identities", cocycle_identities),
        ("statistics", statistics_phases),
        ("conjugation", conjugation),
        ("morphism laws", morphism_law_suite),
        ("functor round trip", functor_round_trip),
        ("oracle equivalence", oracle_equivalence),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}; {secs:.1}s)", i + 1),
            Err(reason) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({reason}; {secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} of 9 criteria pass", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
