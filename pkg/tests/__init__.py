import logging

logger = logging.getLogger("surfaceverifier")
logger.setLevel(logging.DEBUG)
logger.addHandler(logging.StreamHandler())
