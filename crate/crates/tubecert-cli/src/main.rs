//! Command-line front end: certificate checks, batch reports, constant
//! tables, mesh export, and the series expansion.
//!
//! Exit codes: 0 success; 2 usage or parse error; 3 a `--require`d condition
//! failed; 4 numeric domain error (such as a real length at or above the
//! tube-existence threshold).

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tubecert::{
    annulus_area, build_report, builtin_fixtures, certificate_to_json, certify, emit_report,
    expansion_series, parse_native, sample_helicoid, sample_tube_boundary, write_obj, Certificate,
    ComplexLength, ConstantsTable, Genus, GeometryError, HelicoidPatch, ReportFormat,
    SpectrumError, TriangleMesh,
};

#[derive(Parser)]
#[command(
    name = "tubecert",
    version,
    about = "Tube geometry and certificates for short geodesics in hyperbolic 3-manifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify one complex length against every condition.
    Check {
        /// Real length of the geodesic (> 0).
        #[arg(long)]
        ell: f64,
        /// Twist angle in radians (normalized into [-pi, pi)).
        #[arg(long)]
        theta: f64,
        /// Genus of the reference surface (>= 2).
        #[arg(long)]
        genus: u32,
        /// Fail (exit 3) unless the named verdict holds.
        #[arg(long)]
        require: Option<Require>,
        #[arg(long, value_enum, default_value_t = CheckFormat::Text)]
        format: CheckFormat,
    },
    /// Certify every curve of every record in a spectrum file.
    Batch {
        /// Native-format spectrum file, or '-' for stdin.
        #[arg(long, conflicts_with = "fixtures")]
        input: Option<String>,
        /// Use the built-in example dataset instead of a file.
        #[arg(long)]
        fixtures: bool,
        #[arg(long, value_enum, default_value_t = BatchFormat::Json)]
        format: BatchFormat,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the length thresholds and ratio bounds for one genus.
    Constants {
        #[arg(long)]
        genus: u32,
    },
    /// Export a helicoid patch or tube boundary as an OBJ mesh.
    Mesh {
        #[arg(long)]
        ell: f64,
        #[arg(long)]
        theta: f64,
        /// Extent of the axial parameter for helicoid patches.
        #[arg(long, default_value_t = 0.1)]
        v_max: f64,
        /// Samples along u (helicoid) or around the meridian (tube).
        #[arg(long)]
        nu: usize,
        /// Samples along v (helicoid) or along the core (tube).
        #[arg(long)]
        nv: usize,
        #[arg(long, value_enum)]
        kind: MeshKind,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate sqrt(ell)(cosh(r0) - 1) against its series expansion.
    Expand {
        #[arg(long)]
        ell: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Require {
    Theorem1,
    Theorem2,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum BatchFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum MeshKind {
    Helicoid,
    Tube,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn require(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Self {
        let code = match e {
            GeometryError::OutOfMeyerhoffRange { .. } => 4,
            GeometryError::Domain { .. } => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<SpectrumError> for Failure {
    fn from(e: SpectrumError) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    // clap exits with 2 on flag errors and 0 for --help/--version.
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Check {
            ell,
            theta,
            genus,
            require,
            format,
        } => cmd_check(ell, theta, genus, require, format),
        Command::Batch {
            input,
            fixtures,
            format,
            out,
        } => cmd_batch(input, fixtures, format, out),
        Command::Constants { genus } => cmd_constants(genus),
        Command::Mesh {
            ell,
            theta,
            v_max,
            nu,
            nv,
            kind,
            out,
        } => cmd_mesh(ell, theta, v_max, nu, nv, kind, out),
        Command::Expand { ell } => cmd_expand(ell),
    }
}

fn parse_inputs(ell: f64, theta: f64, genus: u32) -> Result<(ComplexLength, Genus), Failure> {
    let cl = ComplexLength::new(ell, theta).map_err(|e| Failure::usage(e.to_string()))?;
    let genus = Genus::new(genus).map_err(|e| Failure::usage(e.to_string()))?;
    Ok((cl, genus))
}

fn print_certificate_text(cert: &Certificate) {
    println!(
        "complex length: ell = {:.12e}, theta = {:.12e}",
        cert.input.ell(),
        cert.input.theta()
    );
    println!("genus: {}", cert.genus.get());
    match &cert.tube {
        Some(t) => {
            println!("tube: r0 = {:.12e}, kappa = {:.12e}", t.radius_r0, t.kappa);
            println!(
                "      meridian_disk_area = {:.12e}, boundary_area = {:.12e}",
                t.meridian_disk_area, t.boundary_area
            );
        }
        None => println!("tube: none (real length not below the tube-existence threshold)"),
    }
    match cert.annulus_area {
        Some(a) => println!("annulus_area: {:.12e}", a),
        None => println!("annulus_area: none"),
    }
    println!(
        "a_parameter: {:.12e} (helicoid unstable: {})",
        cert.a_parameter, cert.unstable_helicoid
    );
    println!("conditions:");
    for c in &cert.conditions {
        println!(
            "  {:<22} {}  lhs = {:.12e}  rhs = {:.12e}  margin = {:+.12e}",
            c.id.as_str(),
            if c.holds { "hold" } else { "FAIL" },
            c.lhs,
            c.rhs,
            c.margin
        );
    }
    println!("theorem1_ok: {}", cert.theorem1_ok);
    println!("theorem2_ok: {}", cert.theorem2_ok);
    if cert.paper_conclusions.is_empty() {
        println!("conclusions: none");
    } else {
        println!("conclusions: {}", cert.paper_conclusions.join("; "));
    }
}

fn cmd_check(
    ell: f64,
    theta: f64,
    genus: u32,
    require: Option<Require>,
    format: CheckFormat,
) -> Result<(), Failure> {
    let (cl, genus) = parse_inputs(ell, theta, genus)?;
    let cert = certify(cl, genus);
    match format {
        CheckFormat::Text => print_certificate_text(&cert),
        CheckFormat::Json => print!("{}", certificate_to_json(&cert)),
    }
    match require {
        Some(Require::Theorem1) if !cert.theorem1_ok => {
            Err(Failure::require("required condition theorem1 is false"))
        }
        Some(Require::Theorem2) if !cert.theorem2_ok => {
            Err(Failure::require("required condition theorem2 is false"))
        }
        _ => Ok(()),
    }
}

fn cmd_batch(
    input: Option<String>,
    fixtures: bool,
    format: BatchFormat,
    out: Option<PathBuf>,
) -> Result<(), Failure> {
    let records = if fixtures {
        builtin_fixtures()
    } else {
        let input =
            input.ok_or_else(|| Failure::usage("one of --input or --fixtures is required"))?;
        let bytes = if input == "-" {
            let mut buf = Vec::new();
            std::io::stdin().read_to_end(&mut buf)?;
            buf
        } else {
            std::fs::read(&input)?
        };
        parse_native(&bytes)?
    };
    let report = build_report(&records);
    let bytes = emit_report(
        &report,
        match format {
            BatchFormat::Json => ReportFormat::Json,
            BatchFormat::Csv => ReportFormat::Csv,
        },
    );
    match out {
        Some(path) => std::fs::write(path, bytes)?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(&bytes)?;
        }
    }
    Ok(())
}

fn cmd_constants(genus: u32) -> Result<(), Failure> {
    let genus = Genus::new(genus).map_err(|e| Failure::usage(e.to_string()))?;
    let t = ConstantsTable::for_genus(genus);
    println!("genus:             {}", t.genus);
    println!("eps_otal(genus):   {:.11e}", t.eps_otal);
    println!("eps0:              {:.11e}", t.eps0);
    println!("eps1:              {:.11e}", t.eps1);
    println!("eps2:              {:.11e}", t.eps2);
    println!("ratio_threshold:   {:.11e}", t.ratio_threshold);
    println!("mori_threshold:    {:.11e}", t.mori_threshold);
    println!("b:                 {:.11e}", t.b);
    println!("ratio_upper_bound: {:.11e}", t.ratio_upper_bound);
    Ok(())
}

fn mesh_stats(mesh: &TriangleMesh) -> (usize, usize, f64) {
    (
        mesh.vertices.len(),
        mesh.triangles.len(),
        mesh.discrete_hyperbolic_area(),
    )
}

fn cmd_mesh(
    ell: f64,
    theta: f64,
    v_max: f64,
    nu: usize,
    nv: usize,
    kind: MeshKind,
    out: PathBuf,
) -> Result<(), Failure> {
    let cl = ComplexLength::new(ell, theta).map_err(|e| Failure::usage(e.to_string()))?;
    let mesh = match kind {
        MeshKind::Helicoid => {
            if nu < 2 || nv < 2 {
                return Err(Failure::usage(
                    "helicoid sampling needs --nu >= 2 and --nv >= 2",
                ));
            }
            let patch = HelicoidPatch::for_tube(cl, v_max, nu, nv)?;
            sample_helicoid(&patch)?
        }
        MeshKind::Tube => {
            if nu < 3 || nv < 2 {
                return Err(Failure::usage(
                    "tube sampling needs --nu >= 3 and --nv >= 2",
                ));
            }
            sample_tube_boundary(cl, nu, nv)?
        }
    };
    std::fs::write(&out, write_obj(&mesh))?;
    let (vertices, triangles, area) = mesh_stats(&mesh);
    println!("wrote {}", out.display());
    println!("vertices: {vertices}");
    println!("triangles: {triangles}");
    println!("discrete_hyperbolic_area: {area:.12e}");
    if let MeshKind::Helicoid = kind {
        // For reference: the smooth patch area over the same domain.
        let r0 = tubecert::tube_radius(cl.ell())?;
        let smooth = annulus_area(cl.ell(), cl.theta(), r0)? * v_max / cl.ell();
        println!("smooth_patch_area: {smooth:.12e}");
    }
    Ok(())
}

fn cmd_expand(ell: f64) -> Result<(), Failure> {
    if !ell.is_finite() || ell <= 0.0 {
        return Err(Failure::usage(format!(
            "--ell {ell} must be finite and > 0"
        )));
    }
    let e = expansion_series(ell)?;
    let floor = 0.5 / tubecert::expansion_base();
    println!("ell:        {ell:.12e}");
    println!("exact:      {:.12e}", e.exact_value);
    println!("series:     {:.12e}", e.series_value);
    println!("remainder:  {:+.12e}", e.remainder);
    println!("floor 1/(2b): {floor:.12e}");
    println!("exact > floor: {}", e.in_small_length_regime());
    Ok(())
}
