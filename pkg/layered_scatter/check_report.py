import json
import os

import jsonschema
import numpy as np
from raiutils.exceptions import UserConfigValidationException

from layered_scatter.constants import _SchemaVersions
from layered_scatter.utils.serialize import dumps


class _CheckReportV1SchemaConstants:
    NAME = 'name'
    DISCREPANCY = 'discrepancy'
    TOLERANCE = 'tolerance'
    PASSED = 'passed'
    PARAMETERS = 'parameters'
    RUNTIME = 'runtime'
    DETAILS = 'details'
    METADATA = 'metadata'


def _check_supported_json_output_versions(version):
    return version in _SchemaVersions.ALL_VERSIONS


class CheckReport:
    """Outcome of a verification check.

    :param name: Check name, one of CheckNames.ALL (or 'convergence').
    :param discrepancy: Measured discrepancy; NaN is stored as +inf.
    :param tolerance: The check passes when discrepancy <= tolerance.
    :param parameters: Parameters the check was run with.
    :param runtime: Wall-clock seconds spent in the check.
    :param details: Auxiliary measurements.
    """

    def __init__(self, name, discrepancy, tolerance, parameters=None, runtime=0.0, details=None, version=None):
        discrepancy = float(discrepancy)
        if np.isnan(discrepancy):
            discrepancy = np.inf
        self._name = name
        self._discrepancy = discrepancy
        self._tolerance = float(tolerance)
        self._parameters = parameters if parameters is not None else {}
        self._runtime = float(runtime)
        self._details = details if details is not None else {}
        self._metadata = {'version': version if version is not None else _SchemaVersions.CURRENT_VERSION}

    def __eq__(self, other):
        if isinstance(other, CheckReport):
            return self.to_dict() == other.to_dict()
        return False

    def __repr__(self):
        return "CheckReport(name={0!r}, discrepancy={1:.3e}, tolerance={2:.1e}, passed={3})".format(
            self.name, self.discrepancy, self.tolerance, self.passed)

    @property
    def name(self):
        return self._name

    @property
    def discrepancy(self):
        return self._discrepancy

    @property
    def tolerance(self):
        return self._tolerance

    @property
    def passed(self):
        return bool(self._discrepancy <= self._tolerance)

    @property
    def parameters(self):
        return self._parameters

    @property
    def runtime(self):
        return self._runtime

    @property
    def details(self):
        return self._details

    @property
    def metadata(self):
        return self._metadata

    def to_row(self):
        """The checks.csv row: check, discrepancy, tolerance, pass."""
        return {'check': self.name, 'discrepancy': self.discrepancy, 'tolerance': self.tolerance,
                'pass': self.passed}

    def to_dict(self):
        return json.loads(dumps({
            _CheckReportV1SchemaConstants.NAME: self.name,
            _CheckReportV1SchemaConstants.DISCREPANCY: self.discrepancy,
            _CheckReportV1SchemaConstants.TOLERANCE: self.tolerance,
            _CheckReportV1SchemaConstants.PASSED: self.passed,
            _CheckReportV1SchemaConstants.PARAMETERS: self.parameters,
            _CheckReportV1SchemaConstants.RUNTIME: self.runtime,
            _CheckReportV1SchemaConstants.DETAILS: self.details,
            _CheckReportV1SchemaConstants.METADATA: self.metadata,
        }))

    @staticmethod
    def _check_report_against_json_schema(report_dict, version):
        """Validate a serialized report against the schema of its version.

        :raises jsonschema.ValidationError: if the dictionary does not conform.
        """
        schema_file_name = 'check_report_v{0}.json'.format(version)
        schema_path = os.path.join(os.path.dirname(__file__), 'schema', schema_file_name)
        with open(schema_path, 'r') as schema_file:
            schema_json = json.load(schema_file)

        jsonschema.validate(report_dict, schema_json)

    def to_json(self):
        """Serialize the report to json after validating it against the report schema."""
        serialization_version = self.metadata['version']
        if not _check_supported_json_output_versions(serialization_version):
            raise UserConfigValidationException(
                "Unsupported serialization version {}".format(serialization_version))
        report_dict = self.to_dict()
        CheckReport._check_report_against_json_schema(report_dict, version=serialization_version)
        return dumps(report_dict)

    @staticmethod
    def from_json(json_str):
        """Deserialize a json string produced by to_json."""
        json_dict = json.loads(json_str)
        version = json_dict.get(_CheckReportV1SchemaConstants.METADATA, {}).get('version')
        if version is None:
            raise UserConfigValidationException("No version field in the json input")
        elif not _check_supported_json_output_versions(version):
            raise UserConfigValidationException("Incompatible version {} found in json input".format(version))
        CheckReport._check_report_against_json_schema(json_dict, version=version)
        return CheckReport(name=json_dict[_CheckReportV1SchemaConstants.NAME],
                           discrepancy=json_dict[_CheckReportV1SchemaConstants.DISCREPANCY],
                           tolerance=json_dict[_CheckReportV1SchemaConstants.TOLERANCE],
                           parameters=json_dict[_CheckReportV1SchemaConstants.PARAMETERS],
                           runtime=json_dict[_CheckReportV1SchemaConstants.RUNTIME],
                           details=json_dict.get(_CheckReportV1SchemaConstants.DETAILS, {}),
                           version=version)
