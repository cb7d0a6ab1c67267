import gettext
import locale
from pathlib import Path


def _get_translator():
    lang = locale.getlocale()[0] or 'en_US'

    # Structure: netfig_cli/locales/zh_CN/LC_MESSAGES/netfig.mo
    locale_dir = Path(__file__).parent.resolve() / 'locales'

    # domain must match DOMAIN in scripts/manage_i18n.py
    translation = gettext.translation(
        domain='netfig', localedir=str(locale_dir), languages=[lang], fallback=True
    )
    return translation.gettext


_ = _get_translator()
