#title           : pipeline_manager.py
#description     : Class to coordinate the commands, from a preset or input file to the emitted report
#author          : ContactGroup_R3 contributors
#date            : 20261019
#version         : 0.1
#usage           : pm = pipeline_manager.PipelineManager(); exit_code, text = pm.manage('classify', preset='heisenberg')
#notes           : numeric work is delegated to the core modules, this class only gathers and routes results
#python_version  : >= 3.8
#==============================================================================

import json
import logging

import numpy as np

from . import algebra_core
from . import classify
from . import embedding
from . import metric_geometry
from . import report_writer
from . import settings
from .exceptions import MalformedElementError, StructureError, UnknownPresetError

logger = logging.getLogger(__name__)

# presets with a matrix model, used by the normexp section of a full report
MODEL_OF_PRESET = {'heisenberg': 'heisenberg', 'sl2': 'sl2', 'sl2_hyperbolic': 'sl2'}
GEODESIC_TIME = 10.0


def load_data(path):
    """
    load_data
    =====
    function to read a JSON file

    Raises
    -----
    StructureError : if the file cannot be read or parsed
    """
    try:
        with open(path, 'r', encoding='utf-8') as file_in:
            return json.load(file_in)
    except (OSError, ValueError) as err:
        raise StructureError('cannot read %s: %s' % (path, err)) from err


class PresetCatalog:
    """
    PresetCatalog
    =====
    Named algebras with contact planes, validated when loaded

    Parameters
    -----
    presets : dict
        {"Preset": {name: algebra document}}

    Attributes
    -----
    self.entries : dict
        name -> (StructureConstants, ContactData)
    self.descriptions : dict
        name -> description
    """

    def __init__(self, presets, tolerances=settings.DEFAULTS):
        if 'Preset' not in presets:
            raise StructureError('preset file needs a top-level "Preset" entry')
        self.entries = {}
        self.descriptions = {}
        for name, doc in presets['Preset'].items():
            C, data = algebra_core.load_algebra(doc)
            if not algebra_core.is_contact(C, data, tolerances).is_contact:
                raise StructureError('preset %s does not carry a contact plane' % name)
            self.entries[name] = (C, data)
            self.descriptions[name] = doc.get('description', '')

    @classmethod
    def from_file(cls, path=settings.presetpath, tolerances=settings.DEFAULTS):
        return cls(load_data(path), tolerances)

    def names(self):
        return sorted(self.entries)

    def get(self, name):
        if name not in self.entries:
            raise UnknownPresetError('unknown preset %r, choose from %s' % (name, ', '.join(self.names())))
        return self.entries[name]


class PipelineManager:
    """
    PipelineManager
    =====
    Class to coordinate the commands between the input (a preset or a JSON file) and the report

    Parameters
    -----
    presetfile : str
        Path to the preset catalog. The shipped catalog is used by default.
    tolerances : Tolerances
    grid : GridSpec
        sampling grid of embed, verify and normexp
    seed : int
        seed of the random basis change used by the stability check

    Attributes
    -----
    self.catalog : PresetCatalog
    self.writer : ReportWriter
        Object that shapes the payload of each command into its JSON document
    self.command_payload : dict
        links a command to the function that gathers its results
    """

    def __init__(self, presetfile=settings.presetpath, tolerances=settings.DEFAULTS,
                 grid=None, seed=settings.DEFAULT_SEED):
        self.tolerances = tolerances
        self.catalog = PresetCatalog.from_file(presetfile, tolerances)
        self.grid = embedding.GridSpec() if grid is None else grid
        self.seed = seed
        self.writer = report_writer.ReportWriter()
        self.command_payload = {
            'validate' : self.validate,
            'classify' : self.classify,
            'embed'    : self.embed,
            'verify'   : self.verify,
            'factor'   : self.factor,
            'geodesic' : self.geodesic,
            'normexp'  : self.normexp,
            'report'   : self.report,
        }

    ###################################
    ### Main functions ################
    ###################################

    def manage(self, command, **flags):
        """
        manage
        =====
        Main function of the PipelineManager, to run a command and return its report

        Parameters
        -----
        command : str
            one of validate, classify, embed, verify, factor, geodesic, normexp, report
        flags : dict
            preset, inputfile, out, tol, model, matrix

        Returns
        -----
        exit_code : int
            0 if every check passed, 1 otherwise
        text : str
            the JSON document
        """
        if command not in self.command_payload:
            raise StructureError('unknown command %r' % command)
        payload = self.command_payload[command](**flags)
        text = self.writer.formulate(command, payload)
        return (0 if payload['passed'] else 1), text

    def resolve(self, preset=None, inputfile=None):
        """the algebra and plane named by a preset or stored in a JSON file"""
        if inputfile:
            return algebra_core.load_algebra(load_data(inputfile))
        if preset:
            return self.catalog.get(preset)
        raise StructureError('give a preset name or an input file')

    ###################################
    ### Commands ######################
    ###################################

    def validate(self, preset=None, inputfile=None, **_):
        C, data = self.resolve(preset, inputfile)
        jacobi = algebra_core.validate_jacobi(C, self.tolerances.jacobi)
        payload = {'preset': preset, 'jacobi': jacobi, 'contact': None, 'reeb': None}
        if jacobi.passed:
            payload['contact'] = algebra_core.is_contact(C, data, self.tolerances)
            if payload['contact'].is_contact:
                payload['reeb'] = algebra_core.reeb_vector(C, data, self.tolerances).tolist()
        else:
            payload['contact'] = algebra_core.ContactReport(False, None)
        payload['passed'] = jacobi.passed and payload['contact'].is_contact
        return payload

    def classify(self, preset=None, inputfile=None, **_):
        C, data = self.resolve(preset, inputfile)
        result = classify.classify_algebra(C, data, self.tolerances)
        return {'preset': preset, 'result': result, 'passed': True}

    def embed(self, preset=None, inputfile=None, out=None, tol=None, **_):
        C, data = self.resolve(preset, inputfile)
        samples, verification, result = embedding.psi_embedding(C, data, self.grid, self.tolerances, tol)
        if out:
            with open(out, 'w', encoding='utf-8', newline='') as file_out:
                self.writer.write_csv(samples, file_out)
            logger.info('wrote %d samples to %s', len(samples), out)
        return {'preset': preset, 'result': result, 'chart': result.chart(), 'samples': samples,
                'out': out, 'verification': verification, 'passed': verification.passed}

    def verify(self, preset=None, inputfile=None, tol=None, **_):
        C, data = self.resolve(preset, inputfile)
        _, verification, result = embedding.psi_embedding(C, data, self.grid, self.tolerances, tol)
        witness = metric_geometry.check_classification(result, self.tolerances)
        stability = self.stability(C, data, result.case_tag)
        return {'preset': preset, 'result': result, 'verification': verification,
                'witness': witness, 'stability': stability,
                'tolerance': self.tolerances.alignment if tol is None else tol,
                'passed': verification.passed and witness.passed and stability['passed']}

    def factor(self, model=None, matrix=None, **_):
        if model is None or matrix is None:
            raise StructureError('factor needs a model and a matrix')
        if isinstance(matrix, str):
            try:
                matrix = json.loads(matrix)
            except ValueError as err:
                raise StructureError('matrix is not valid JSON: %s' % err) from err
        try:
            matrix = np.array(matrix, dtype=float)
        except (TypeError, ValueError) as err:
            raise MalformedElementError('matrix is not a numeric array: %s' % err) from err
        factorization, image = embedding.embed_element(model, matrix)
        scale = max(1.0, float(np.max(np.abs(matrix))))
        return {'factorization': factorization, 'image': list(image),
                'passed': factorization.residual <= 1e-12 * scale}

    def geodesic(self, preset=None, inputfile=None, **_):
        C, data = self.resolve(preset, inputfile)
        frame = algebra_core.canonical_frame(C, data, self.tolerances)
        result = classify.classify(frame, self.tolerances)
        constants = result.frame.constants
        criterion = [metric_geometry.geodesic_criterion(constants, i, self.tolerances.geodesic) for i in range(3)]
        consistent = all(
            report.passed == bool(np.max(np.abs(metric_geometry.euler_arnold_rhs(constants, np.eye(3)[i])))
                                  <= self.tolerances.geodesic)
            for i, report in enumerate(criterion))
        payload = {'preset': preset, 'case_tag': result.case_tag, 'criterion': criterion,
                   'euler_arnold': {'consistent': consistent}, 'flow': None}
        passed = consistent
        if result.C is not None:
            metric = metric_geometry.LeftInvariantMetric.from_result(result)
            field = result.frame.P @ result.C
            u0 = result.C / np.sqrt(metric.inner(field, field))
            trajectory = metric_geometry.integrate_geodesic(constants, u0, GEODESIC_TIME)
            payload['flow'] = {'u0': u0.tolist(), 'T': GEODESIC_TIME, 'drift': trajectory.drift(),
                               'energy_error': trajectory.energy_error()}
            passed = passed and trajectory.drift() <= 1e-8
        payload['passed'] = passed
        return payload

    def normexp(self, model=None, preset=None, **_):
        if model is None:
            model = MODEL_OF_PRESET.get(preset)
        if model is None:
            raise StructureError('normexp needs a matrix model, heisenberg or sl2')
        axis = self.grid.axis()
        report = metric_geometry.normal_exponential(model, axis, axis, tolerances=self.tolerances)
        return {'normexp': report, 'passed': report.passed}

    def report(self, preset=None, inputfile=None, tol=None, **_):
        """
        report
        =====
        function to gather validate, classify, verify, geodesic and, when the preset has a
        matrix model, normexp into one document; su(2) stops after classify
        """
        sections = {'validate': self.validate(preset, inputfile)}
        if sections['validate']['passed']:
            sections['classify'] = self.classify(preset, inputfile)
            sections['geodesic'] = self.geodesic(preset, inputfile)
            if sections['classify']['result'].case_tag != 'Su2':
                sections['verify'] = self.verify(preset, inputfile, tol)
            if preset in MODEL_OF_PRESET:
                sections['normexp'] = self.normexp(preset=preset)
        return {'preset': preset, 'sections': sections,
                'passed': all(section['passed'] for section in sections.values())}

    ###################################
    ### Helper functions ##############
    ###################################

    def stability(self, C, data, case_tag):
        """case tag after a seeded random change of basis"""
        rng = np.random.default_rng(self.seed)
        P = algebra_core.random_basis_change(rng)
        moved = classify.classify_algebra(*algebra_core.transform(C, data, P), self.tolerances)
        return {'seed': self.seed, 'case_tag': moved.case_tag, 'passed': moved.case_tag == case_tag}
