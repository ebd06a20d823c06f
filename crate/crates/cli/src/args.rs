use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "tconic",
    version,
    about = "T-singularities, T-chains and conic bundle fiber graphs"
)]
pub struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hirzebruch-Jung continued fractions.
    #[command(subcommand)]
    Hj(HjCmd),
    /// T-chains.
    #[command(subcommand)]
    Tchain(TchainCmd),
    /// Weighted graphs.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Fiber graphs of log conic bundles.
    #[command(subcommand)]
    Lcb(LcbCmd),
    /// Exhaustive searches.
    #[command(subcommand)]
    Classify(ClassifyCmd),
}

#[derive(Debug, Subcommand)]
pub enum HjCmd {
    /// Expand N/Q into its chain.
    Expand { fraction: String },
    /// Evaluate a chain B1,B2,... to N/Q.
    Eval { chain: String },
    /// The dual fraction N/Q' with Q·Q' ≡ 1 mod N.
    Conjugate { fraction: String },
    /// Index, β and γ of 1/N(1,Q).
    Invariants { fraction: String },
    /// Whether 1/N(1,Q) is a T-singularity.
    IsT { fraction: String },
    /// Normalize 1/N(A,B) to N/Q.
    Action { n: String, a: String, b: String },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum StepArg {
    A,
    B,
}

#[derive(Debug, Subcommand)]
pub enum TchainCmd {
    /// Whether B1,... is a T-chain.
    Check { chain: String },
    /// All T-chains up to a length.
    Enum {
        #[arg(long)]
        max_len: usize,
    },
    /// Apply one extension step.
    Step { step: StepArg, chain: String },
    /// Derivation of a T-chain from its seed.
    Certify { chain: String },
    /// Log discrepancies at the two ends, (q+1)/n and (q'+1)/n.
    Alphas { chain: String },
}

#[derive(Debug, Args)]
pub struct GraphArg {
    /// A graph file, `-` for standard input, or an inline `chain:...` / `fork:...`.
    pub graph: String,
}

#[derive(Debug, Subcommand)]
pub enum GraphCmd {
    /// Signature class of the quadratic form.
    Classify(GraphArg),
    /// Primitive positive kernel vector of a parabolic graph.
    Kernel(GraphArg),
    /// Codiscrepancies of the white vertices.
    Discrepancies(GraphArg),
    /// Blow up a vertex.
    BlowupVertex {
        id: u32,
        #[command(flatten)]
        g: GraphArg,
    },
    /// Blow up an edge.
    BlowupEdge {
        a: u32,
        b: u32,
        #[command(flatten)]
        g: GraphArg,
    },
    /// Contract a black vertex.
    Contract {
        id: u32,
        #[command(flatten)]
        g: GraphArg,
    },
    /// Canonical form up to isomorphism.
    Canonical(GraphArg),
    /// White components.
    Components(GraphArg),
    /// Intersection matrix.
    Matrix(GraphArg),
}

#[derive(Debug, Subcommand)]
pub enum LcbCmd {
    /// Full verification of a fiber graph.
    Verify(GraphArg),
    /// Match against the index-two families.
    Family(GraphArg),
    /// Global index.
    Index(GraphArg),
    /// One step of the series construction.
    Construct {
        #[arg(long)]
        black: u32,
        #[arg(long)]
        end: u32,
        #[command(flatten)]
        g: GraphArg,
    },
    /// Minimal instance of a family (I*, I**, I***, II*, III*, III**).
    Instance {
        family: String,
        #[arg(long = "box")]
        box_chain: Option<String>,
    },
    /// Check the path LEFT,1,RIGHT for parabolicity and the side-sum condition.
    ParabolicLine { left: String, right: String },
}

#[derive(Debug, Subcommand)]
pub enum ClassifyCmd {
    /// Enumerate fiber graphs within bounds.
    Run {
        #[arg(long)]
        max_vertices: usize,
        #[arg(long)]
        max_weight: u32,
        #[arg(long)]
        index: Option<u64>,
        #[arg(long)]
        irreducible: bool,
        #[arg(long)]
        non_du_val: bool,
        /// Maximum number of partial trees to generate.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Index-two fibers labelled by family.
    Index2 {
        #[arg(long)]
        max_vertices: usize,
    },
    /// Fibers grouped by their number of non-Du Val points.
    Multi {
        #[arg(long)]
        max_vertices: usize,
        #[arg(long)]
        max_weight: u32,
    },
    /// A fiber with a single singular point of the given type.
    Realize {
        chain: String,
        #[arg(long)]
        max_steps: usize,
    },
}
