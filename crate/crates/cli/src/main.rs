use std::process::ExitCode;

fn main() -> ExitCode {
    match syzlab_cli::run(std::env::args_os()) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.exit_code as u8)
        }
        Err(e) => match e.downcast_ref::<clap::Error>() {
            Some(ce) if !ce.use_stderr() => {
                let _ = ce.print();
                ExitCode::SUCCESS
            }
            Some(ce) => {
                let _ = ce.print();
                ExitCode::from(1)
            }
            None => {
                eprintln!("error: {e:#}");
                ExitCode::from(1)
            }
        },
    }
}
