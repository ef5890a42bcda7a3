#title           : report_writer.py
#description     : Class to compose the JSON reports and CSV sample files emitted for each command
#author          : ContactGroup_R3 contributors
#date            : 20261019
#version         : 0.1
#usage           : writer = report_writer.ReportWriter(); text = writer.formulate('classify', payload)
#notes           : output is deterministic: keys are sorted and floats written by repr
#python_version  : >= 3.8
#==============================================================================

import csv
import io
import json
import logging
import math

import numpy as np

from .embedding import CSV_COLUMNS

logger = logging.getLogger(__name__)


def _plain(value):
    """numpy scalars and arrays as json-native values, non-finite floats as null"""
    if isinstance(value, dict):
        return {str(key): _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, np.generic):
        return _plain(value.item())
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


class ReportWriter:
    """
    ReportWriter
    =====
    Class to compose the output documents of the commands

    Attributes
    -----
    self.command_report : dict
        links a command to the function that shapes its payload
        add new commands to this dictionary
    """

    def __init__(self, indent=2):
        self.indent = indent
        self.command_report = {
            'validate' : self.validate_report,
            'classify' : self.classify_report,
            'embed'    : self.embed_report,
            'verify'   : self.verify_report,
            'factor'   : self.factor_report,
            'geodesic' : self.geodesic_report,
            'normexp'  : self.normexp_report,
            'report'   : self.full_report,
        }

    ###################################
    ### Main functions ################
    ###################################

    def formulate(self, command, payload):
        """
        formulate
        =====
        function to turn the payload of a command into its JSON document

        Parameters
        -----
        command : str
        payload : dict
            the results gathered by the pipeline manager

        Returns
        -----
        str : JSON text ending with a newline
        """
        document = self.command_report[command](payload)
        document['command'] = command
        return json.dumps(_plain(document), sort_keys=True, indent=self.indent, allow_nan=False) + '\n'

    def write_csv(self, samples, handle=None):
        """
        write_csv
        =====
        writes one row per EmbeddingSample, with a header row

        Parameters
        -----
        samples : list of EmbeddingSample
        handle : file object, optional
            when missing the CSV text is returned

        Returns
        -----
        str or None
        """
        target = io.StringIO() if handle is None else handle
        writer = csv.DictWriter(target, fieldnames=CSV_COLUMNS, lineterminator='\n')
        writer.writeheader()
        for sample in samples:
            writer.writerow({key: repr(float(value)) for key, value in sample.row().items()})
        logger.debug('wrote %d sample rows', len(samples))
        if handle is None:
            return target.getvalue()
        return None

    ###################################
    ### Helper functions ##############
    ###################################

    def validate_report(self, payload):
        return {'preset': payload.get('preset'),
                'jacobi': {'max_residual': payload['jacobi'].max_residual,
                           'passed': payload['jacobi'].passed,
                           'tolerance': payload['jacobi'].tolerance},
                'contact': {'is_contact': payload['contact'].is_contact,
                            'alpha_bracket': payload['contact'].value},
                'reeb': payload.get('reeb'),
                'passed': payload['passed']}

    def classify_report(self, payload):
        document = payload['result'].to_dict()
        document['preset'] = payload.get('preset')
        document['passed'] = payload['passed']
        return document

    def embed_report(self, payload):
        return {'preset': payload.get('preset'),
                'case_tag': payload['result'].case_tag,
                'chart': payload['chart'].to_dict(),
                'samples': len(payload['samples']),
                'out': payload.get('out'),
                'verification': payload['verification'].to_dict(),
                'passed': payload['passed']}

    def verify_report(self, payload):
        return {'preset': payload.get('preset'),
                'case_tag': payload['result'].case_tag,
                'tolerance': payload['tolerance'],
                'pushforward': payload['verification'].to_dict(),
                'classification': payload['witness'].to_dict(),
                'stability': payload['stability'],
                'passed': payload['passed']}

    def factor_report(self, payload):
        document = payload['factorization'].to_dict()
        document['image'] = payload.get('image')
        document['passed'] = payload['passed']
        return document

    def geodesic_report(self, payload):
        return {'preset': payload.get('preset'),
                'case_tag': payload['case_tag'],
                'criterion': [report.to_dict() for report in payload['criterion']],
                'euler_arnold': payload['euler_arnold'],
                'flow': payload.get('flow'),
                'passed': payload['passed']}

    def normexp_report(self, payload):
        document = payload['normexp'].to_dict()
        document['passed'] = payload['passed']
        return document

    def full_report(self, payload):
        sections = {}
        for command, section in payload['sections'].items():
            sections[command] = self.command_report[command](section)
        return {'preset': payload.get('preset'), 'sections': sections, 'passed': payload['passed']}
