//! Cross-validation of the truncated ladder against the exact fermionic
//! realization, reported identity by identity.

use coboson::nalgebra::DVector;
use coboson::num_complex::Complex64;
use coboson::{
    chi_normalization, oracle_d_operator, oracle_fock_state, project_to_coboson_sector,
    CompositeCreator, FermionSpace, LadderSpec, SparseOperator, MAX_PAIR_STATES,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{CliError, OracleCheckArgs};

const IDENTITY_NAMES: [&str; 5] = ["ladder", "chi_N", "commutator", "D-diagonal", "projection"];

/// Per-identity maximum absolute deviations over everything checked so far.
#[derive(Debug, Clone, Copy, Default)]
struct Deviations {
    values: [f64; 5],
}

impl Deviations {
    fn merge(&mut self, other: Deviations) {
        for (mine, theirs) in self.values.iter_mut().zip(other.values) {
            *mine = mine.max(theirs);
        }
    }
}

pub fn run(args: &OracleCheckArgs) -> Result<(), CliError> {
    if args.n_s_max == 0 {
        return Err(CliError::Config("ns-max must be at least 1".into()));
    }
    if args.n_s_max > MAX_PAIR_STATES {
        return Err(CliError::ResourceCap(format!(
            "ns-max {} exceeds the oracle cap of {MAX_PAIR_STATES} (space dimension 4^n_s)",
            args.n_s_max
        )));
    }
    if !args.tol.is_finite() || args.tol <= 0.0 {
        return Err(CliError::Config(format!(
            "tolerance must be a positive number, got {}",
            args.tol
        )));
    }

    let mut worst = Deviations::default();
    for n_s in 1..=args.n_s_max {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed.wrapping_add(n_s as u64));
        let mut draws = vec![vec![0.0; n_s]];
        for _ in 0..3 {
            draws.push(
                (0..n_s)
                    .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
                    .collect(),
            );
        }
        for thetas in &draws {
            worst.merge(check_identities(n_s, thetas)?);
        }
    }

    println!(
        "oracle equivalence: n_s = 1..={}, 3 random phase draws per capacity plus the uniform one (seed {})",
        args.n_s_max, args.seed
    );
    let mut failures = 0usize;
    for (name, dev) in IDENTITY_NAMES.iter().zip(worst.values) {
        let ok = dev <= args.tol;
        if !ok {
            failures += 1;
        }
        println!(
            "  {name:<12} max deviation {dev:9.3e}  tol {:8.1e}  {}",
            args.tol,
            if ok { "ok" } else { "FAIL" }
        );
    }
    if failures > 0 {
        println!("{failures} identities exceeded tolerance");
        return Err(CliError::Numerics(format!(
            "{failures} oracle identities exceeded tolerance {}",
            args.tol
        )));
    }
    println!("all identities within tolerance");
    Ok(())
}

fn check_identities(n_s: usize, thetas: &[f64]) -> Result<Deviations, CliError> {
    let spec = LadderSpec::new(n_s)?;
    let space = FermionSpace::new(n_s)?;
    let creator = CompositeCreator::new(space, thetas)?;
    let b_dag = creator.operator();
    let b = creator.annihilation_operator();
    let d_op = oracle_d_operator(space);
    let basis: Vec<DVector<Complex64>> = (0..=n_s)
        .map(|n| oracle_fock_state(&creator, n))
        .collect::<Result<_, _>>()?;
    let zero_state = DVector::from_element(space.dim(), Complex64::ZERO);

    // ladder: B+ |f_N> = F_{N+1} |f_{N+1}> and B |f_N> = F_N |f_{N-1}>
    let mut ladder = 0.0f64;
    for n in 0..=n_s {
        let up = b_dag.apply(&basis[n])?;
        let expect = if n < n_s {
            &basis[n + 1] * Complex64::new(spec.f(n + 1), 0.0)
        } else {
            zero_state.clone()
        };
        ladder = ladder.max((up - expect).norm());
        let down = b.apply(&basis[n])?;
        let expect = if n > 0 {
            &basis[n - 1] * Complex64::new(spec.f(n), 0.0)
        } else {
            zero_state.clone()
        };
        ladder = ladder.max((down - expect).norm());
    }

    // chi_N: ||(B+)^N |vac>||^2 = N! chi_N, relative
    let mut chi_dev = 0.0f64;
    let mut v = space.vacuum();
    let mut factorial = 1.0f64;
    for n in 1..=n_s {
        v = b_dag.apply(&v)?;
        factorial *= n as f64;
        let expected = factorial * chi_normalization(n, n_s)?;
        chi_dev = chi_dev.max((v.norm_squared() / expected - 1.0).abs());
    }

    // commutator: [B, B+] = I - D and [D, B+] = (2/n_s) B+
    let identity = SparseOperator::identity(space.dim());
    let comm = b
        .commutator(b_dag)?
        .max_abs_diff(&identity.sub(&d_op)?)?
        .max(
            d_op.commutator(b_dag)?
                .max_abs_diff(&b_dag.scale(Complex64::new(2.0 / n_s as f64, 0.0)))?,
        );

    // D-diagonal: D |f_N> = (2N/n_s) |f_N>
    let mut d_diag = 0.0f64;
    for (n, f_n) in basis.iter().enumerate() {
        let df = d_op.apply(f_n)?;
        let scale = Complex64::new(2.0 * n as f64 / n_s as f64, 0.0);
        d_diag = d_diag.max((df - f_n * scale).norm());
    }

    // projection: sector matrix elements reproduce the ladder matrices
    let projection = project_to_coboson_sector(b_dag, &creator)?
        .max_abs_diff(&spec.creation_matrix())
        .max(project_to_coboson_sector(&b, &creator)?.max_abs_diff(&spec.annihilation_matrix()))
        .max(project_to_coboson_sector(&d_op, &creator)?.max_abs_diff(&spec.deviation_matrix()));

    Ok(Deviations {
        values: [ladder, chi_dev, comm, d_diag, projection],
    })
}
