import logging

import coloredlogs
import numpy

coloredlogs.install(level=logging.DEBUG, logger=logging.getLogger("cesnorms"))
numpy.set_printoptions(precision=17, threshold=50)
