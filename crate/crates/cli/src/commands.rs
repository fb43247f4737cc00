use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use hoi_core::format::{self, format_f64, Sidecar, ViewKind};
use hoi_core::{
    build_cache, load_csv, oinfo_tensor, pairwise_view, pearson_view, standardize,
    triplet_o_information, with_threads, DatasetManifest, KernelParams, OInfoTensor, PairwiseView,
    Recording,
};

use crate::{InspectArgs, KernelArgs, ViewsArgs};

const EXIT_RECORDING_FAILED: u8 = 1;
const EXIT_CONFIG: u8 = 2;

struct Job {
    subject_id: String,
    path: PathBuf,
}

enum Output {
    Matrix(PairwiseView),
    Tensor(OInfoTensor),
}

pub fn views(args: &ViewsArgs) -> ExitCode {
    let (params, jobs, views) = match prepare_views(args) {
        Ok(prepared) => prepared,
        Err(err) => {
            eprintln!("error: {err:#}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let run = with_threads(args.kernel.threads, || {
        let mut failures = 0usize;
        for job in &jobs {
            if let Err(err) = run_job(job, &views, params, args) {
                eprintln!("error: {}: {err:#}", job.subject_id);
                failures += 1;
            }
        }
        failures
    });
    match run {
        Ok(0) => ExitCode::SUCCESS,
        Ok(failures) => {
            eprintln!("{failures} of {} recordings failed", jobs.len());
            ExitCode::from(EXIT_RECORDING_FAILED)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}

fn prepare_views(args: &ViewsArgs) -> anyhow::Result<(KernelParams, Vec<Job>, BTreeSet<ViewKind>)> {
    let params = KernelParams::new(args.kernel.sigma, args.kernel.alpha)?;
    let views: BTreeSet<ViewKind> = args.views.iter().copied().collect();
    if views.is_empty() {
        bail!("--views must name at least one view");
    }
    let jobs = match (&args.input, &args.manifest) {
        (Some(input), None) => vec![Job {
            subject_id: input
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "recording".into()),
            path: input.clone(),
        }],
        (None, Some(manifest)) => DatasetManifest::load(manifest)
            .with_context(|| format!("reading manifest {}", manifest.display()))?
            .entries
            .into_iter()
            .map(|e| Job {
                subject_id: e.subject_id,
                path: e.path,
            })
            .collect(),
        _ => bail!("exactly one of --input or --manifest is required"),
    };
    fs::create_dir_all(&args.out)
        .with_context(|| format!("creating output directory {}", args.out.display()))?;
    Ok((params, jobs, views))
}

fn run_job(
    job: &Job,
    views: &BTreeSet<ViewKind>,
    params: KernelParams,
    args: &ViewsArgs,
) -> anyhow::Result<()> {
    let started = Instant::now();
    let raw = load_csv(&job.path, args.kernel.orientation)?;
    let rec = standardize(&raw)?.with_subject_id(&job.subject_id);

    let mut outputs = Vec::new();
    let mut eigendecompositions = 0;
    if views.contains(&ViewKind::Pearson) {
        outputs.push((ViewKind::Pearson, Output::Matrix(pearson_view(&rec)?)));
    }
    if views.contains(&ViewKind::Mi) || views.contains(&ViewKind::Oinfo) {
        let cache = build_cache(&rec, params)?;
        if views.contains(&ViewKind::Mi) {
            outputs.push((ViewKind::Mi, Output::Matrix(pairwise_view(&cache))));
        }
        if views.contains(&ViewKind::Oinfo) {
            outputs.push((ViewKind::Oinfo, Output::Tensor(oinfo_tensor(&cache, None)?)));
        }
        eigendecompositions = cache.eigendecompositions();
    }

    for (kind, output) in &outputs {
        let stem = format!("{}.{}", job.subject_id, kind.name());
        let path = args.out.join(format!("{stem}.{}", kind.file_extension()));
        match output {
            Output::Matrix(view) => format::save_matrix_csv(&path, view)?,
            Output::Tensor(tensor) => format::save_tensor(&path, tensor)?,
        }
        sidecar(&rec, *kind, params).save(args.out.join(format!("{stem}.json")))?;
    }
    eprintln!(
        "{}: C={} T={} views={} eigendecompositions={} elapsed={:.3}s",
        job.subject_id,
        rec.channels(),
        rec.timepoints(),
        outputs.iter().map(|(k, _)| k.name()).collect::<Vec<_>>().join(","),
        eigendecompositions,
        started.elapsed().as_secs_f64()
    );
    Ok(())
}

fn sidecar(rec: &Recording, view: ViewKind, params: KernelParams) -> Sidecar {
    Sidecar {
        subject_id: rec.subject_id().to_string(),
        view,
        sigma: params.sigma(),
        alpha: params.alpha(),
        channels: rec.channels(),
        timepoints: rec.timepoints(),
        tool_version: hoi_core::VERSION.to_string(),
    }
}

pub fn inspect(args: &InspectArgs) -> ExitCode {
    match run_inspect(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_RECORDING_FAILED)
        }
    }
}

fn run_inspect(args: &InspectArgs) -> anyhow::Result<()> {
    let tensor = format::load_tensor(&args.tensor)?;
    let c = tensor.size();
    let (i, j, k) = (args.i, args.j, args.k);
    if [i, j, k].iter().any(|&x| x >= c) {
        bail!("cell ({i}, {j}, {k}) is out of range for C = {c}");
    }
    let stored = tensor.get(i, j, k);
    let degenerate = i == j || i == k || j == k;
    if degenerate {
        println!("cell ({i}, {j}, {k}): o = {} (degenerate cell: repeated index)", format_f64(stored));
        return Ok(());
    }
    println!("cell ({i}, {j}, {k}): o = {}", format_f64(stored));

    if args.recompute {
        let input = args.input.as_deref().context("--recompute needs --input")?;
        let b = recompute(input, &args.kernel, [i, j, k], c)?;
        println!("recomputed: tc = {}", format_f64(b.tc));
        println!("recomputed: dtc = {}", format_f64(b.dtc));
        println!("recomputed: o = {}", format_f64(b.o));
        println!("recomputed: h_ijk = {}", format_f64(b.triple_joint.bits()));
        println!("recomputed - stored = {}", format_f64(b.o - stored));
    }
    Ok(())
}

/// Rebuilds only the three channels of interest; the cached terms and the
/// triple joint are computed exactly as in a full run.
fn recompute(
    input: &Path,
    kernel: &KernelArgs,
    triplet: [usize; 3],
    c: usize,
) -> anyhow::Result<hoi_core::TcDtcBreakdown> {
    let params = KernelParams::new(kernel.sigma, kernel.alpha)?;
    let rec = standardize(&load_csv(input, kernel.orientation)?)?;
    if rec.channels() != c {
        bail!(
            "recording has {} channels but the tensor has C = {c}",
            rec.channels()
        );
    }
    let rows: Vec<Vec<f64>> = triplet.iter().map(|&ch| rec.channel(ch).to_vec()).collect();
    let sub = Recording::from_channels(rec.subject_id(), &rows)?;
    let cache = build_cache(&sub, params)?;
    Ok(triplet_o_information(&cache, 0, 1, 2)?)
}
