from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from quadmod.exceptions import INPUT_ERRORS
from quadmod.serialization import dumps_spec, parse_builtin


class Command(BaseCommand):
    """Write a builtin quad module as a quadmod-spec-v1 document."""

    help = 'Exports a builtin example (mn:M,N or perm:d,(cycles),(cycles)) as quadmod-spec-v1 JSON'

    def add_arguments(self, parser):
        parser.add_argument('builtin')
        parser.add_argument('--output', help='file to write; stdout when omitted')

    def handle(self, *args, **options):
        try:
            spec = parse_builtin(options['builtin'])
        except INPUT_ERRORS as error:
            raise CommandError(str(error), returncode=2)
        document = dumps_spec(spec)
        if options.get('output'):
            Path(options['output']).write_text(document + '\n', encoding='utf-8')
            self.stdout.write(f'Wrote {spec.label} to {options["output"]}')
        else:
            self.stdout.write(document)
