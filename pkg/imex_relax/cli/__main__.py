from imex_relax.cli import run_imex_relax

if __name__ == "__main__":
    run_imex_relax()
