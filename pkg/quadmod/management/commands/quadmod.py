from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from quadmod.exceptions import INPUT_ERRORS, QuadModError
from quadmod.forms import RunConfigForm
from quadmod.pipeline import COMMANDS, run


class Command(BaseCommand):
    """Run the quad-module verification pipeline on a builtin example or a spec file."""

    help = 'Validates a quad module and checks its Fock, Cuntz-Krieger and K-theory identities'

    def add_arguments(self, parser):
        parser.add_argument('stage', choices=COMMANDS)
        parser.add_argument('--builtin', help='mn:M,N or perm:d,(cycles),(cycles)')
        parser.add_argument('--input', help='path of a quadmod-spec-v1 JSON document')
        parser.add_argument('--depth', type=int, help='truncation depth K of the Fock module')
        parser.add_argument('--format', choices=['text', 'json'], default='text')
        parser.add_argument('--output', help='write the report here instead of stdout')
        parser.add_argument('--seed', type=int, help='also run the seeded Smith normal form property suite')

    def handle(self, *args, **options):
        form = RunConfigForm(data=self.form_data(options))
        if not form.is_valid():
            raise CommandError(self.describe_errors(form), returncode=2)
        config = form.to_config()
        try:
            result = run(config, progress=self.show_progress)
        except INPUT_ERRORS as error:
            raise CommandError(str(error), returncode=2)
        except QuadModError as error:
            raise CommandError(f'Verification stopped: {error}', returncode=1)
        self.stderr.write(' ' * 40, ending='\r')
        report = result.render(config.output_format)
        if config.output:
            Path(config.output).write_text(report + '\n', encoding='utf-8')
            self.stdout.write(f'Report written to {config.output}')
        else:
            self.stdout.write(report)
        if result.exit_code:
            failures = sum(len(section.failures()) for section in result.sections)
            raise CommandError(f'{failures} verification(s) failed', returncode=1)

    def form_data(self, options):
        keys = ('builtin', 'input', 'depth', 'format', 'output', 'seed')
        data = {key: '' if options.get(key) is None else options[key] for key in keys}
        data['command'] = options['stage']
        return data

    def describe_errors(self, form):
        return '; '.join(f'{field}: {" ".join(errors)}' for field, errors in form.errors.items())

    def show_progress(self, stage, position, count):
        self.stderr.write(f'Running {stage} ({position}/{count})', ending='\r')
