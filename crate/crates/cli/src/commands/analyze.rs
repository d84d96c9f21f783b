use super::{parse_payoffs, AnalysisRow};
use crate::error::CliError;
use crate::output::emit;
use crate::{AnalyzeArgs, Format};

pub fn run(args: AnalyzeArgs) -> Result<(), CliError> {
    if args.n == 0 {
        return Err(CliError::Validation("--n must be at least 1".into()));
    }
    let payoffs = parse_payoffs(&args.a, &args.b, &args.c)?;
    let row = AnalysisRow::build(args.n, args.tau, &payoffs, None);
    let text = match args.format {
        Format::Json => {
            serde_json::to_string_pretty(&row).map_err(|e| CliError::Internal(e.to_string()))?
        }
        Format::Csv => format!("{}\n{}", AnalysisRow::csv_header(false), row.csv_row(false)),
        Format::Text => {
            return Err(CliError::Validation(
                "analyze supports --format json or csv".into(),
            ))
        }
    };
    emit(args.out.as_deref(), &text)
}
