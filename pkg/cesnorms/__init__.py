import logging

from cesnorms.__version__ import __version__

_logger = logging.getLogger(__name__)
_logger.addHandler(logging.NullHandler())
