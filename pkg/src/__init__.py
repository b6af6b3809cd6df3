# reality-domain source package
