from ..exceptions import WebValidationError
from ..services import apps_service, serialization_service


def run(args):
    report = apps_service.csp_check(args.k, args.max_nodes)
    if args.table:
        serialization_service.write_output(apps_service.csp_table(report).to_string(index=False), args.output)
    else:
        serialization_service.write_output(serialization_service.csp_report_to_dict(report), args.output)
    if not report.holds:
        raise WebValidationError('fixed-point counts differ from the q-hook evaluations', {'k': args.k})
    return report
