//! A seeded run of the invariant suite.

use std::collections::BTreeMap;

use dpz_core::{a_chain_config, bl_divisor, int, pair, rat, solve_prescribed_pairing};
use dpz_cylinder::sampling::{random_model, AmpleSampler};
use dpz_cylinder::{construct, verify_certificate, AmpleInput, CylinderKind};
use dpz_dynkin::{ClassKind, Dp2Lattice};
use dpz_fibration::{template_from_dynkin, CaseTag, Condition, FibrationData, SurfaceModel};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Serialize)]
pub struct CheckLine {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn line(name: impl Into<String>, result: Result<String, String>) -> CheckLine {
    let name = name.into();
    match result {
        Ok(detail) => CheckLine {
            name,
            pass: true,
            detail,
        },
        Err(detail) => CheckLine {
            name,
            pass: false,
            detail,
        },
    }
}

fn chain_pairing() -> Result<String, String> {
    let mut count = 0;
    for n in 1..=7 {
        let config = a_chain_config(n);
        let labels: Vec<String> = (1..=n).map(|j| format!("D{j}")).collect();
        for ell in 1..=n {
            let closed = bl_divisor(n, ell).map_err(|e| e.to_string())?.self_int;
            let target = BTreeMap::from([(format!("D{ell}"), int(-1))]);
            let solved =
                solve_prescribed_pairing(&config, &labels, &target).map_err(|e| e.to_string())?;
            let sq = pair(&config, &solved, &solved).map_err(|e| e.to_string())?;
            if sq != closed {
                return Err(format!("({n},{ell}): closed form {closed}, solver {sq}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} entries agree"))
}

fn lattice_counts() -> Result<String, String> {
    let lat = Dp2Lattice;
    let (e, r) = (
        lat.enumerate_classes(ClassKind::MinusOne).len(),
        lat.enumerate_classes(ClassKind::Root).len(),
    );
    if (e, r) == (56, 126) {
        Ok("56 (−1)-classes, 126 roots".into())
    } else {
        Err(format!("{e} (−1)-classes, {r} roots"))
    }
}

fn worked_examples() -> Result<String, String> {
    let (data, _) = template_from_dynkin(&"D4".parse().map_err(|e| format!("{e}"))?, &[])
        .map_err(|e| e.to_string())?;
    let m = SurfaceModel::new(data).map_err(|e| e.to_string())?;
    let h = AmpleInput::new([
        ("F", int(3)),
        ("E1", int(-1)),
        ("E2", int(1)),
        ("E3", int(1)),
    ]);
    let cert = construct(&m, &h).map_err(|e| e.to_string())?;
    if cert.kind != CylinderKind::Cyl(3) || cert.divisor.get("E1p") != Some(&rat(3, 2)) {
        return Err(format!(
            "D4 example gives {} with {:?}",
            cert.kind, cert.divisor
        ));
    }
    let data = FibrationData {
        condition: Condition::StarStar,
        m0: 2,
        m_inf: Some(2),
        alphas: vec![3, 3],
        betas: vec![],
        gammas: vec![],
    };
    let m = SurfaceModel::new(data).map_err(|e| e.to_string())?;
    let h = AmpleInput::new([("E1", int(3)), ("E2", int(6))]);
    let cert = construct(&m, &h).map_err(|e| e.to_string())?;
    if cert.kind != CylinderKind::CylStar || cert.divisor.get("F0") != Some(&rat(3, 2)) {
        return Err(format!(
            "A2 example gives {} with {:?}",
            cert.kind, cert.divisor
        ));
    }
    Ok("D4 and A2 examples reproduce".into())
}

fn soundness(case: CaseTag, seed: u64, count: usize) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let per_model = 10;
    let mut done = 0;
    while done < count {
        let m = random_model(case, &mut rng).map_err(|e| e.to_string())?;
        let sampler = AmpleSampler::new(&m).map_err(|e| e.to_string())?;
        for _ in 0..per_model.min(count - done) {
            let h = sampler.sample(&mut rng);
            let fail = |e: String| format!("{:?}, H = {:?}: {e}", m.data(), h.coeffs);
            let cert = construct(&m, &h).map_err(|e| fail(e.to_string()))?;
            let report = verify_certificate(&m, &h, &cert).map_err(|e| fail(e.to_string()))?;
            if let Some(f) = report.failures().first() {
                return Err(fail(format!("{}: {}", f.check, f.detail)));
            }
            let lambda = rat(7, 3);
            let scaled = construct(&m, &h.scale(&lambda)).map_err(|e| fail(e.to_string()))?;
            let expected: BTreeMap<_, _> = cert
                .divisor
                .iter()
                .map(|(l, c)| (l.clone(), c * &lambda))
                .collect();
            if scaled.divisor != expected || scaled.removed_curves != cert.removed_curves {
                return Err(fail("scaling H does not scale the certificate".into()));
            }
            done += 1;
        }
    }
    Ok(format!("{done} certificates verified and scale correctly"))
}

pub fn run(seed: u64, count: usize) -> Vec<CheckLine> {
    let mut out = vec![
        line("chain-pairing", chain_pairing()),
        line("lattice-counts", lattice_counts()),
        line("worked-examples", worked_examples()),
    ];
    for (k, case) in CaseTag::ALL.into_iter().enumerate() {
        out.push(line(
            format!("soundness-{case}"),
            soundness(case, seed.wrapping_add(k as u64), count),
        ));
    }
    out
}
