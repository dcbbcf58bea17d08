use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "affsatake",
    version,
    about = "Affine Satake and function-field Eisenstein computations"
)]
pub struct Cli {
    /// Output document format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Significand bits for numeric work: up to 53 uses f64, up to 128 the extended type.
    #[arg(long, env = "AFFSATAKE_PRECISION", default_value_t = 128, global = true)]
    pub precision: u32,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Root datum summary, positive coroots and Poincaré series.
    Rootdata(RootdataArgs),
    /// Satake image of h_lambda, finite or (with --level) affine.
    Macdonald(MacdonaldArgs),
    /// Inverse Satake coefficients of an irreducible character.
    Kostka(KostkaArgs),
    /// The affine correction factor Delta.
    Delta(DeltaArgs),
    /// Gindikin-Karpelevich series and point counts.
    Gk(GkArgs),
    /// Relation checks and products in the Iwahori-Hecke algebra.
    HeckeCheck(HeckeArgs),
    /// Zeta function of a curve.
    Zeta(ZetaArgs),
    /// Volume of Bun_G in both evaluation modes.
    Tamagawa(TamagawaArgs),
    /// The affine volume as a quotient of zeta values.
    TamagawaAffine(TamagawaAffineArgs),
    /// Borel constant term, or its residue at sigma = rho.
    ConstantTerm(ConstantTermArgs),
    /// Affine correction product and truncated W_aff sum.
    AffineCt(AffineCtArgs),
}

#[derive(Args, Debug)]
pub struct TypeArg {
    /// Cartan type such as A2, G2 or E8.
    #[arg(long = "type")]
    pub type_label: String,
}

#[derive(Args, Debug)]
pub struct RootdataArgs {
    #[command(flatten)]
    pub ty: TypeArg,
    /// Also list affine coroots and the affine Poincaré series.
    #[arg(long)]
    pub affine: bool,
    /// Delta-degree bound for affine coroots.
    #[arg(long = "N", default_value_t = 2)]
    pub n: i64,
}

#[derive(Args, Debug)]
pub struct MacdonaldArgs {
    #[command(flatten)]
    pub ty: TypeArg,
    /// Finite part in simple-coroot coordinates, e.g. 1,0.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    /// Level; selects the affine formula.
    #[arg(long)]
    pub level: Option<i64>,
    /// Coefficient of delta in lambda (affine only).
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub delta: i64,
    /// Delta-degree truncation (affine only).
    #[arg(long = "N", default_value_t = 2)]
    pub n: i64,
    /// Length budget for the W_aff sum (affine only).
    #[arg(long = "L", default_value_t = 12)]
    pub l: usize,
}

#[derive(Args, Debug)]
pub struct KostkaArgs {
    #[command(flatten)]
    pub ty: TypeArg,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum DeltaModeArg {
    Product,
    Sum,
    Both,
}

#[derive(Args, Debug)]
pub struct DeltaArgs {
    #[command(flatten)]
    pub ty: TypeArg,
    #[arg(long = "N", default_value_t = 2)]
    pub n: i64,
    #[arg(long, value_enum, default_value_t = DeltaModeArg::Product)]
    pub mode: DeltaModeArg,
    /// Length budget for the sum mode.
    #[arg(long = "L", default_value_t = 12)]
    pub l: usize,
}

#[derive(Args, Debug)]
pub struct GkArgs {
    #[command(flatten)]
    pub ty: TypeArg,
    /// Finite series keeping |gamma| <= depth.
    #[arg(long, conflicts_with_all = ["n", "height"])]
    pub depth: Option<i64>,
    /// Affine series up to this delta-degree.
    #[arg(long = "N", requires = "height")]
    pub n: Option<i64>,
    /// Affine height bound.
    #[arg(long, requires = "n")]
    pub height: Option<i64>,
    /// Report q^|gamma| [e^-gamma] at these integer values of q instead of the series.
    #[arg(long)]
    pub counts: Option<String>,
}

#[derive(Args, Debug)]
pub struct HeckeArgs {
    #[command(flatten)]
    pub ty: TypeArg,
    #[arg(long)]
    pub affine: bool,
    /// Left factor in the textual element format; with --right, prints the product.
    #[arg(long, requires = "right", allow_hyphen_values = true)]
    pub left: Option<String>,
    #[arg(long, requires = "left", allow_hyphen_values = true)]
    pub right: Option<String>,
}

#[derive(Args, Debug)]
pub struct CurveArg {
    /// Curve as inline JSON {"q", "genus", "L_poly"} or a path to such a file.
    #[arg(long)]
    pub curve: String,
}

#[derive(Args, Debug)]
pub struct ZetaArgs {
    #[command(flatten)]
    pub curve: CurveArg,
    /// Evaluation point `re` or `re,im`.
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum TamagawaModeArg {
    Formula,
    Cohomology,
    Both,
}

#[derive(Args, Debug)]
pub struct TamagawaArgs {
    #[command(flatten)]
    pub ty: TypeArg,
    #[command(flatten)]
    pub curve: CurveArg,
    #[arg(long, value_enum, default_value_t = TamagawaModeArg::Both)]
    pub mode: TamagawaModeArg,
}

#[derive(Args, Debug)]
pub struct TamagawaAffineArgs {
    #[command(flatten)]
    pub ty: TypeArg,
    /// Evaluate the quotient on this curve.
    #[arg(long)]
    pub curve: Option<String>,
}

#[derive(Args, Debug)]
pub struct ConstantTermArgs {
    #[command(flatten)]
    pub ty: TypeArg,
    #[command(flatten)]
    pub curve: CurveArg,
    /// Values <sigma, alpha_i^vee>, one per simple coroot.
    #[arg(long, allow_hyphen_values = true, required_unless_present = "residue")]
    pub sigma: Option<String>,
    /// Compute the residue at sigma = rho on the component of degree --gamma instead.
    #[arg(long, conflicts_with = "sigma")]
    pub residue: bool,
    /// Degree in simple-coroot coordinates (defaults to 0).
    #[arg(long, requires = "residue", allow_hyphen_values = true)]
    pub gamma: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum AffineCtModeArg {
    Prefactor,
    WSum,
}

#[derive(Args, Debug)]
pub struct AffineCtArgs {
    #[command(flatten)]
    pub ty: TypeArg,
    #[command(flatten)]
    pub curve: CurveArg,
    /// Real part of s.
    #[arg(long, allow_hyphen_values = true)]
    pub s: f64,
    /// Number of factors j = 1..J in the prefactor.
    #[arg(long = "J", default_value_t = 60)]
    pub j: usize,
    #[arg(long, value_enum, default_value_t = AffineCtModeArg::Prefactor)]
    pub mode: AffineCtModeArg,
    /// Length budget for w-sum mode.
    #[arg(long = "L", default_value_t = 4)]
    pub l: usize,
    /// Values <sigma, alpha_i^vee> (defaults to rho).
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<String>,
}
