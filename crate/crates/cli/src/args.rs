use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "fsgroups", version, about = "Computations with groups generated by finite-state machines")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct MachineArg {
    /// Builtin name (see `zoo`), `f_n(k)`, or path to a machine file.
    #[arg(long, short)]
    pub machine: String,
}

#[derive(Args, Debug, Clone)]
pub struct FormatArg {
    #[arg(long, short, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct WordArg {
    /// Group word such as `a b^-1 [a,b] (a d)^4`.
    #[arg(long, short, allow_hyphen_values = true)]
    pub word: String,
}

#[derive(Args, Debug, Clone)]
pub struct GensArg {
    /// Comma-separated generator words; defaults to the non-identity states.
    #[arg(long, short)]
    pub gens: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct StructureArg {
    /// Language acceptor file; the bundled free abelian structure is used
    /// when neither file is given.
    #[arg(long, requires = "multiplier")]
    pub language: Option<String>,
    /// Multiplier acceptor file over padded pairs.
    #[arg(long, requires = "language")]
    pub multiplier: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LanguageKind {
    /// Every word over the states.
    All,
    /// No state repeated consecutively.
    Adjacent,
    /// Freely reduced words over states and inverses.
    Reduced,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a machine.
    Show {
        #[command(flatten)]
        m: MachineArg,
        #[command(flatten)]
        f: FormatArg,
    },
    /// Invertibility, reversibility, bireversibility.
    Classify {
        #[command(flatten)]
        m: MachineArg,
        #[command(flatten)]
        f: FormatArg,
    },
    /// Minimal machine for one state.
    Min {
        #[command(flatten)]
        m: MachineArg,
        #[arg(long, short)]
        state: String,
        #[command(flatten)]
        f: FormatArg,
    },
    /// Product machine; state (q,r) applies r first.
    Prod {
        #[command(flatten)]
        m: MachineArg,
        /// Second factor.
        #[arg(long)]
        with: String,
        #[command(flatten)]
        f: FormatArg,
    },
    /// Inverse machine.
    Inv {
        #[command(flatten)]
        m: MachineArg,
        #[command(flatten)]
        f: FormatArg,
    },
    /// Dual machine (states and letters exchanged).
    Dual {
        #[command(flatten)]
        m: MachineArg,
        #[command(flatten)]
        f: FormatArg,
    },
    /// Run a state on an input word.
    Apply {
        #[command(flatten)]
        m: MachineArg,
        #[arg(long, short)]
        state: String,
        /// Letters, space separated or one character each.
        #[arg(long, short)]
        input: String,
        #[command(flatten)]
        f: FormatArg,
    },
    /// Decide whether a word is the identity.
    Wp {
        #[command(flatten)]
        m: MachineArg,
        #[command(flatten)]
        w: WordArg,
        /// Largest intermediate machine, in states.
        #[arg(long, default_value_t = fsgroups::action::DEFAULT_STATE_CAP)]
        cap: usize,
        #[command(flatten)]
        f: FormatArg,
    },
    /// Order of a group element, searched up to a bound.
    Order {
        #[command(flatten)]
        m: MachineArg,
        #[command(flatten)]
        w: WordArg,
        #[arg(long, default_value_t = fsgroups::action::DEFAULT_MAX_EXP)]
        max_exp: u64,
        #[arg(long, default_value_t = fsgroups::action::DEFAULT_STATE_CAP)]
        cap: usize,
        #[command(flatten)]
        f: FormatArg,
    },
    /// Root permutation and sections of a word.
    Wreath {
        #[command(flatten)]
        m: MachineArg,
        #[command(flatten)]
        w: WordArg,
        #[command(flatten)]
        f: FormatArg,
    },
    /// Permutation-matrix form of a word.
    Matrix {
        #[command(flatten)]
        m: MachineArg,
        #[command(flatten)]
        w: WordArg,
        #[command(flatten)]
        f: FormatArg,
    },
    /// Nucleus of a contracting group.
    Nucleus {
        #[command(flatten)]
        m: MachineArg,
        /// Largest nucleus size before giving up.
        #[arg(long, default_value_t = fsgroups::analysis::DEFAULT_NUCLEUS_CAP)]
        cap: usize,
        #[command(flatten)]
        f: FormatArg,
    },
    /// Activity growth of the machine.
    Activity {
        #[command(flatten)]
        m: MachineArg,
        /// Also report path counts up to this length.
        #[arg(long, default_value_t = 10)]
        paths: usize,
        #[command(flatten)]
        f: FormatArg,
    },
    /// Orbit of a level word under a group element.
    Orbits {
        #[command(flatten)]
        m: MachineArg,
        #[command(flatten)]
        w: WordArg,
        #[arg(long, short)]
        input: String,
        #[command(flatten)]
        f: FormatArg,
    },
    /// Orbits of the dual group on state words of one length.
    Dualorbits {
        #[command(flatten)]
        m: MachineArg,
        #[arg(long, short)]
        level: usize,
        #[arg(long, value_enum, default_value_t = LanguageKind::All)]
        language: LanguageKind,
        /// Also check that every orbit has a nontrivial word.
        #[arg(long)]
        certify: bool,
        #[command(flatten)]
        f: FormatArg,
    },
    /// Schreier graph of a level.
    Schreier {
        #[command(flatten)]
        m: MachineArg,
        #[command(flatten)]
        g: GensArg,
        #[arg(long, short)]
        level: usize,
        #[command(flatten)]
        f: FormatArg,
    },
    /// Sphere and ball sizes in the group.
    Growth {
        #[command(flatten)]
        m: MachineArg,
        #[command(flatten)]
        g: GensArg,
        #[arg(long, short, default_value_t = 6)]
        radius: usize,
        /// Largest number of elements enumerated.
        #[arg(long, default_value_t = fsgroups::geometry::DEFAULT_GROWTH_ELEMENT_CAP)]
        cap: usize,
        #[command(flatten)]
        f: FormatArg,
    },
    /// Level transitivity on levels 1 through n.
    Transitive {
        #[command(flatten)]
        m: MachineArg,
        #[command(flatten)]
        g: GensArg,
        #[arg(long, short)]
        level: usize,
        #[command(flatten)]
        f: FormatArg,
    },
    /// Four-point hyperbolicity defect of a finite graph.
    Delta {
        /// Cycle on n vertices.
        #[arg(long, group = "graph")]
        cycle: Option<usize>,
        /// Grid `WxH`.
        #[arg(long, group = "graph")]
        grid: Option<String>,
        /// Edge list file, one `u v` pair per line.
        #[arg(long, group = "graph")]
        edges: Option<String>,
        /// Schreier graph of this machine (with `--level`).
        #[arg(long, short, group = "graph", requires = "level")]
        machine: Option<String>,
        #[command(flatten)]
        g: GensArg,
        #[arg(long, short)]
        level: Option<usize>,
        #[command(flatten)]
        f: FormatArg,
    },
    /// List builtin machines, or describe one.
    Zoo {
        name: Option<String>,
        #[command(flatten)]
        f: FormatArg,
    },
    /// Cayley machine of a finite group.
    Cayley {
        /// Cyclic group of this order.
        #[arg(long, group = "group")]
        cyclic: Option<usize>,
        /// Multiplication table file, one row per line.
        #[arg(long, group = "group")]
        table: Option<String>,
        #[command(flatten)]
        f: FormatArg,
    },
    /// Machine of the affine map v -> a v + b on binary vectors.
    Affine {
        /// Rows separated by `;`, entries by `,`.
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
        #[command(flatten)]
        f: FormatArg,
    },
    /// Word problem through an automatic structure.
    AutoWp {
        #[command(flatten)]
        s: StructureArg,
        #[command(flatten)]
        w: WordArg,
        #[command(flatten)]
        f: FormatArg,
    },
    /// Restrict a structure's language to shortlex-least normal forms.
    AutoUnique {
        #[command(flatten)]
        s: StructureArg,
        /// Also list accepted words up to this length.
        #[arg(long)]
        enumerate: Option<usize>,
        #[command(flatten)]
        f: FormatArg,
    },
    /// Dehn reduction in a surface group.
    Dehn {
        #[arg(long, default_value_t = 2)]
        genus: usize,
        #[command(flatten)]
        w: WordArg,
        #[command(flatten)]
        f: FormatArg,
    },
    /// Leading coefficients of the surface-group growth series.
    Series {
        #[arg(long, default_value_t = 2)]
        genus: usize,
        #[arg(long, default_value_t = 6)]
        terms: usize,
        #[command(flatten)]
        f: FormatArg,
    },
    /// Sphere sizes of a surface group by enumeration.
    SurfaceGrowth {
        #[arg(long, default_value_t = 2)]
        genus: usize,
        #[arg(long, short, default_value_t = 3)]
        radius: usize,
        #[arg(long, default_value_t = fsgroups::autostruct::surface::DEFAULT_SURFACE_CAP)]
        cap: usize,
        #[command(flatten)]
        f: FormatArg,
    },
    /// Fellow-traveller check on the free abelian structure.
    FtCheck {
        #[arg(long, short)]
        k: u64,
        #[arg(long, default_value_t = 8)]
        len_max: usize,
        #[command(flatten)]
        f: FormatArg,
    },
}
