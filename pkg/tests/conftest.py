from liedual import rootdatum


def build(descriptor):
    """Root datum from a descriptor string."""
    return rootdatum.build_from_dynkin(rootdatum.parse_descriptor(descriptor))
