from ..services import apps_service, serialization_service


def run(args):
    report = apps_service.asm_class(args.n, args.max_nodes)
    if args.table:
        return serialization_service.write_output(apps_service.asm_table(report).to_string(index=False), args.output)
    return serialization_service.write_output(serialization_service.asm_report_to_dict(report), args.output)
