import logging

logger = logging.getLogger('lattice_invariants')
logger.setLevel(logging.WARNING)
