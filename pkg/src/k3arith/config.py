try:
    import texttable

    __hastexttable__ = True
except Exception:
    __hastexttable__ = False
