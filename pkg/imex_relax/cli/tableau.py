from imex_relax.result import Result
from imex_relax.tableaux import tableau_check, tableau_list


def main(args, parser):
    if args.tableau_command == "check":
        return Result.from_dict(
            tableau_check(args.name, order=args.order, additional=args.additional)
        )
    if args.tableau_command == "list":
        return Result.from_dict(tableau_list())
    parser.error("tableau needs an action: check or list")
