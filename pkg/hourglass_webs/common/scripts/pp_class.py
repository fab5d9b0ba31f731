from ..services import apps_service, serialization_service


def run(args):
    a, b, c = args.box
    report = apps_service.pp_class(a, b, c, args.max_nodes)
    if args.table:
        return serialization_service.write_output(apps_service.pp_table(report).to_string(index=False), args.output)
    payload = serialization_service.pp_report_to_dict(report)
    payload['macmahon'] = apps_service.macmahon(a, b, c)
    return serialization_service.write_output(payload, args.output)
