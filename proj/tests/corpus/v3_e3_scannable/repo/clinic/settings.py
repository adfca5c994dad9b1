DEBUG = False

DATABASES = {
    "default": {
        "ENGINE": "django.db.backends.postgresql",
        "NAME": "clinic",
        "USER": "django",
        "PASSWORD": "Dj4ngoCl1nic",
        "HOST": "pg.meridian-health.org",
        "PORT": "5432",
    }
}
