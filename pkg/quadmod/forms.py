"""Forms for the quadmod app."""
from django import forms
from django.core.validators import MinValueValidator, RegexValidator

from .pipeline import COMMANDS, RunConfig
from .serialization import BUILTIN


class RunConfigForm(forms.Form):
    """Form validating the options of one quadmod run."""

    command = forms.ChoiceField(choices=[(command, command) for command in COMMANDS])
    builtin = forms.CharField(
        required=False,
        validators=[RegexValidator(
            regex=BUILTIN.pattern,
            message='Builtin must look like mn:M,N or perm:d,(cycles),(cycles)'
        )]
    )
    input = forms.CharField(required=False)
    depth = forms.IntegerField(required=False, validators=[MinValueValidator(2)])
    format = forms.ChoiceField(choices=[('text', 'text'), ('json', 'json')], required=False)
    output = forms.CharField(required=False)
    seed = forms.IntegerField(required=False, min_value=0)

    def clean(self):
        """Exactly one spec source, and a depth the requested stages can use."""

        super().clean()
        builtin = self.cleaned_data.get('builtin')
        source = self.cleaned_data.get('input')
        command = self.cleaned_data.get('command')
        depth = self.cleaned_data.get('depth')
        if 'builtin' in self.errors:
            return
        if bool(builtin) == bool(source):
            self.add_error('input', 'Give exactly one of --builtin and --input.')
        if command == 'ck' and not builtin:
            self.add_error('command', 'ck needs a builtin example.')
        if depth is not None and command in ('ck', 'ktheory', 'full') and depth < 3:
            self.add_error('depth', 'The generator relations need depth 3 or more.')

    def to_config(self):
        """The RunConfig of a valid form."""

        data = self.cleaned_data
        return RunConfig(
            command=data['command'],
            source=data.get('builtin') or data.get('input'),
            depth=data.get('depth'),
            output_format=data.get('format') or 'text',
            output=data.get('output') or None,
            seed=data.get('seed'),
        )
