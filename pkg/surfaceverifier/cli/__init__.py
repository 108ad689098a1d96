import argparse
import logging

from surfaceverifier import _util


class ListAction(argparse.Action):
    """Action that lists the registered checks, grouped by section, for the configuration parsed so far."""

    # noinspection PyShadowingNames
    def __call__(self, parser, namespace, values, option_string=None):
        from surfaceverifier.workbench import Workbench

        print("The following checks are registered. Select them with --check, e.g. --check 'S5.*'.")
        for section in Workbench(**vars(namespace)).sections:
            print(section.printable_status)

        parser.exit()


class VerifierStreamHandler(logging.StreamHandler):
    terminator = "\n"

    def __init__(self, colored_func=None, verbosity=0, *args, **kwargs):
        super(VerifierStreamHandler, self).__init__(*args, **kwargs)
        self.setFormatter(VerifierFormatter(colored_func, verbosity=verbosity))


class VerifierFormatter(logging.Formatter):
    """Formats logging messages: [+] for progress, [-] for warnings and errors, indented lines for details."""

    def __init__(self, colored_func, verbosity=0):
        super(VerifierFormatter, self).__init__()
        self.colored_func = colored_func
        self.verbosity = verbosity

    def format(self, record):
        msg = record.getMessage()
        if self.verbosity >= 4 and record.exc_info:
            if not record.exc_text:
                record.exc_text = self.formatException(record.exc_info)
            if msg[-1:] != "\n":
                msg += "\n"
            msg += record.exc_text
        if record.levelno >= logging.ERROR:
            return self.colored_func("[-] " + msg, 'red')
        elif record.levelno >= logging.WARNING:
            return self.colored_func("[-] " + msg, 'yellow')
        elif record.levelno == logging.INFO:
            return self.colored_func("[+] " + msg, 'cyan')
        else:
            return self.colored_func("    " + msg, 'cyan')


def get_coloring_func(color=False, no_color=False):
    # Colorize the output by default if the terminal supports it
    if not color and no_color:
        color = False
    elif color:
        color = True
    else:
        color = _util.terminal_supports_color()

    if not color:
        # noinspection PyUnusedLocal,PyShadowingNames
        def col(s, *args, **kwargs):
            return s
        return col
    else:
        from termcolor import colored
        return colored
